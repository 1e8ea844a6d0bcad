import numpy as np
import pytest

import dissipative_symplectic as ds

LIN, LIN_EXACT = ds.linear_decay()
QD, QD_EXACT = ds.quadratic_drag()
AVG = ds.channel_averaged_system(ds.ChannelParams(2.0))


def rk4_poly(h):
    return 1 - h + h**2 / 2 - h**3 / 6 + h**4 / 24


def test_explicit_euler_examples():
    assert ds.explicit_euler_step(LIN, 0.0, 1.0, [1.0])[0] == 0.0
    assert ds.explicit_euler_step(QD, 0.0, 0.5, [1.0])[0] == 0.5
    assert ds.explicit_euler_step(LIN, 0.0, 1e-300, [0.7])[0] == 0.7


def test_implicit_euler_examples():
    assert ds.implicit_euler_step(LIN, 0.0, 1.0, [1.0])[0] == pytest.approx(0.5, abs=1e-15)
    assert abs(ds.implicit_euler_step(LIN, 0.0, 1e8, [1.0])[0]) < 1e-7
    assert ds.implicit_euler_step(AVG, 0.0, 1.0, [0.0])[0] == pytest.approx(0.75, abs=1e-15)


def test_implicit_euler_residual_postcondition(rng):
    cfg = ds.NewtonConfig()
    for _ in range(50):
        # keep the explicit-Euler predictor v - h v^2 nonnegative so Newton
        # starts on the physical branch
        v = rng.uniform(0.1, 2)
        h = rng.uniform(0.01, 1.0) / v
        v1 = ds.implicit_euler_step(QD, 0.0, h, [v], cfg)[0]
        assert abs(v1 - v - h * (-v1 * v1)) <= cfg.tol
        # positive root of h v1^2 + v1 - v = 0
        assert v1 == pytest.approx((-1 + np.sqrt(1 + 4 * h * v)) / (2 * h), abs=1e-13)


def test_rk4_examples():
    assert ds.rk4_step(LIN, 0.0, 1.0, [1.0])[0] == pytest.approx(0.375, abs=1e-15)
    assert ds.rk4_step(LIN, 0.0, 0.1, [1.0])[0] == pytest.approx(0.9048375, abs=1e-15)
    assert ds.rk4_step(LIN, 0.0, 1e-300, [0.3])[0] == 0.3


def test_implicit_euler_closed_form():
    for h in (0.01, 0.3, 2.5):
        n = 40
        traj = ds.integrate_implicit_euler(LIN, 0.0, h, n, [1.0])
        assert np.allclose(traj.values, (1 + h) ** -np.arange(n + 1), atol=1e-13, rtol=0)


def test_rk4_stability_polynomial_power():
    for h in (0.01, 0.3, 2.5):
        n = 40
        traj = ds.integrate_rk4(LIN, 0.0, h, n, [1.0])
        assert np.allclose(traj.values, rk4_poly(h) ** np.arange(n + 1), atol=1e-13, rtol=0)


def _slope(integrator, sys, exact):
    hs = [0.1, 0.05, 0.025, 0.0125]
    errs = []
    for h in hs:
        traj = integrator(sys, 0.0, h, ds.num_steps(5.0, h), [1.0])
        errs.append(np.max(np.abs(traj.values - exact(traj.times))))
    return np.polyfit(np.log(hs), np.log(errs), 1)[0]


@pytest.mark.parametrize("sys,exact", [(LIN, LIN_EXACT), (QD, QD_EXACT)])
def test_convergence_orders(sys, exact):
    assert 3.8 <= _slope(ds.integrate_rk4, sys, exact) <= 4.2
    assert 0.8 <= _slope(ds.integrate_implicit_euler, sys, exact) <= 1.2
    assert 0.8 <= _slope(ds.integrate_explicit_euler, sys, exact) <= 1.2
