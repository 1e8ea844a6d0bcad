"""Acceptance criteria, one test (or parametrized family) per criterion.

Each check appends a PASS/FAIL line that is printed in the session summary.
Tolerances are fixed here and are not tuned to the results.
"""

import numpy as np
import pytest

import dissipative_symplectic as ds
from dissipative_symplectic import harness

from conftest import ACCEPTANCE_LINES, bundled_lagrangians, central_diff, rel_err


def verdict(name, ok, detail):
    ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
    print(ACCEPTANCE_LINES[-1])
    assert ok, detail


def max_errors(problem, hs, t_end, methods=("method1", "method2", "implicit-euler", "rk4"),
               **kw):
    records, failed = harness.sweep(problem, methods, hs, t_end, **kw)
    assert failed == 0
    return {(r.method, r.h): r.max_abs_error for r in records}


# 1. unconditional stability

def test_c1_unconditional_stability_linear():
    rng = np.random.default_rng(1)
    hs = 10.0 ** rng.uniform(-6, 6, 1000)
    r1 = np.array([ds.amplification_factor(ds.METHOD_I, h) for h in hs])
    r2 = np.array([ds.amplification_factor(ds.METHOD_II, h) for h in hs])
    worst = max(np.abs(r1).max(), np.abs(r2).max())
    verdict("C1a stability, linear test", bool(worst < 1.0),
            f"max |factor| over 1000 log-uniform h in [1e-6, 1e6] = {worst:.16f}")


@pytest.mark.parametrize("gamma", [2.0, 0.5, -3.0])
def test_c1_unconditional_stability_channel(gamma):
    L = ds.channel_lagrangian(ds.ChannelParams(gamma))
    traj = ds.integrate(L, ds.METHOD_I, 0.0, 1e6, 3, [0.0])
    dev = np.abs(traj.values[1:] - gamma / 2)
    verdict(f"C1b channel Method I h=1e6, gamma={gamma}", bool(dev.min() < 1e-5 * abs(gamma)),
            f"|v - gamma/2| over 3 steps = {dev.tolist()}, bound {1e-5 * abs(gamma):.1e}")


# 2. generic stepper vs closed-form updates

def _closed_forms():
    g = 2.0
    return {
        ("linear", "I"): lambda h, v: v / (1 + h + 0.5 * h * h),
        ("linear", "II"): lambda h, v: (1 - 0.5 * h) / (1 + 0.5 * h) * v,
        ("channel", "I"): lambda h, v: (8 / 15 * v + g * h * h + 2 / 3 * g * h)
        / (8 / 15 + 2 * h * h + 4 / 3 * h),
        ("channel", "II"): lambda h, v: ((1 - 1.5 * h) * v + 1.5 * g * h) / (1 + 1.5 * h),
    }


@pytest.mark.parametrize("problem", ["linear", "channel"])
def test_c2_closed_form_equivalence(problem):
    L = dict(bundled_lagrangians())[problem]
    rng = np.random.default_rng(2)
    worst = 0.0
    for name, c in (("I", ds.METHOD_I), ("II", ds.METHOD_II)):
        ref = _closed_forms()[(problem, name)]
        for _ in range(100):
            h = 10 ** rng.uniform(-3, 3)
            v = rng.uniform(-2, 2)
            got = ds.variational_step(L, c, 0.0, h, [v])[0][0]
            worst = max(worst, abs(got - ref(h, v)))
    verdict(f"C2 closed-form equivalence, {problem}", worst <= 1e-12,
            f"max |Newton - closed form| over 2x100 (v_n, h) = {worst:.2e} (tol 1e-12)")


# 3. convergence orders

SLOPE_H = [0.1, 0.05, 0.025, 0.0125]
SLOPE_BANDS = {"method1": (1.8, 2.2), "method2": (1.8, 2.2),
               "implicit-euler": (0.8, 1.2), "rk4": (3.8, 4.2)}


@pytest.mark.parametrize("problem", ["linear", "qdrag"])
def test_c3_convergence_orders(problem):
    errs = max_errors(problem, SLOPE_H, 5.0, tuple(SLOPE_BANDS))
    slopes = {m: harness.convergence_slope(SLOPE_H, [errs[(m, h)] for h in SLOPE_H])
              for m in SLOPE_BANDS}
    ok = all(lo <= slopes[m] <= hi for m, (lo, hi) in SLOPE_BANDS.items())
    verdict(f"C3 convergence orders, {problem}", ok,
            ", ".join(f"{m}={s:.3f}" for m, s in slopes.items()))


# 4. linear test, large steps

@pytest.fixture(scope="module")
def linear_errors():
    return max_errors("linear", [2.5, 2.0, 1.5, 0.1], 20.0)


@pytest.mark.parametrize("h", [2.5, 2.0, 1.5])
def test_c4_large_step_beats_baselines(linear_errors, h):
    e = {m: linear_errors[(m, h)] for m in ("method1", "method2", "implicit-euler", "rk4")}
    ok = max(e["method1"], e["method2"]) < min(e["implicit-euler"], e["rk4"])
    verdict(f"C4 linear h={h}: Methods I, II < IE and RK4", ok,
            ", ".join(f"{m}={v:.6g}" for m, v in e.items()))


def test_c4_small_step_beats_implicit_euler_tenfold(linear_errors):
    e = {m: linear_errors[(m, 0.1)] for m in ("method1", "method2", "implicit-euler")}
    ratio = e["implicit-euler"] / max(e["method1"], e["method2"])
    verdict("C4 linear h=0.1: IE / max(I, II) >= 10", ratio >= 10,
            f"ratio = {ratio:.2f}; " + ", ".join(f"{m}={v:.3g}" for m, v in e.items()))


# 5. quadratic drag

DRAG_H = [1.0, 0.1, 0.05, 0.01, 0.005, 0.001]


@pytest.fixture(scope="module")
def drag_errors():
    return max_errors("qdrag", DRAG_H, 10.0, ("method1", "method2", "implicit-euler"))


@pytest.mark.parametrize("h", DRAG_H)
def test_c5_quadratic_drag_beats_implicit_euler(drag_errors, h):
    e = {m: drag_errors[(m, h)] for m in ("method1", "method2", "implicit-euler")}
    ok = max(e["method1"], e["method2"]) < e["implicit-euler"]
    verdict(f"C5 qdrag h={h}: Methods I, II < IE", ok,
            ", ".join(f"{m}={v:.6g}" for m, v in e.items()))


# 6. channel flow

@pytest.fixture(scope="module")
def channel_errors():
    return max_errors("channel", [0.01, 0.001, 1e-4, 1e-5], 3.0, gamma=2.0)


@pytest.mark.parametrize("h", [0.01, 0.001])
def test_c6_channel_method1_best(channel_errors, h):
    e = {m: channel_errors[(m, h)] for m in ("method1", "method2", "implicit-euler", "rk4")}
    others = min(e["method2"], e["implicit-euler"], e["rk4"])
    ok = e["method1"] <= 0.5 * others
    verdict(f"C6 channel h={h}: Method I <= 0.5 x others", ok,
            f"ratio = {e['method1'] / others:.3f}; "
            + ", ".join(f"{m}={v:.6g}" for m, v in e.items()))


def test_c6_channel_error_plateau(channel_errors):
    diffs = {}
    for m in ("method1", "method2", "implicit-euler", "rk4"):
        a, b = channel_errors[(m, 1e-4)], channel_errors[(m, 1e-5)]
        diffs[m] = abs(a - b) / max(a, b)
    verdict("C6 channel plateau h=1e-4 vs 1e-5 (< 5%)", max(diffs.values()) < 0.05,
            ", ".join(f"{m}={d:.2%}" for m, d in diffs.items()))


# 7. exact solutions

def test_c7_exact_solutions():
    steady = abs(ds.channel_exact_centerline(ds.ChannelParams(2.0), 100.0) - 1.0)
    d = 1e-5
    t = np.linspace(0.0, 10.0, 1001)[1:]
    worst = 0.0
    for sys, exact in (ds.linear_decay(), ds.quadratic_drag()):
        vdot = (exact(t + d) - exact(t - d)) / (2 * d)
        f = np.array([sys.rhs(s, [exact(s)])[0] for s in t])
        worst = max(worst, float(np.max(np.abs(vdot - f))))
    # channel: u_t(0, t) from the series vs finite differences of the evaluator
    p = ds.ChannelParams(2.0)
    coef, rate = ds.problems._series_terms(p)
    tc = np.linspace(0.05, 3.0, 60)
    ut = (ds.channel_exact_centerline(p, tc + d) - ds.channel_exact_centerline(p, tc - d)) / (2 * d)
    ut_series = np.array([np.sum(coef * rate * np.exp(-rate * s)) for s in tc])
    worst = max(worst, float(np.max(np.abs(ut - ut_series))))
    verdict("C7 exact solutions", steady < 1e-10 and worst < 1e-6,
            f"|u(0,100) - 1| = {steady:.2e} (tol 1e-10); max FD residual = {worst:.2e} (tol 1e-6)")


# 8. gradient checks

@pytest.mark.parametrize("name,L", bundled_lagrangians())
def test_c8_gradient_checks(name, L):
    rng = np.random.default_rng(8)
    worst = 0.0
    for _ in range(100):
        t = rng.uniform(0, 3)
        h = 10 ** rng.uniform(-1.5, 0.5)
        vn, vn1 = rng.uniform(-2, 2, 1), rng.uniform(-2, 2, 1)
        v, vd = rng.uniform(-2, 2, 1), rng.uniform(-2, 2, 1)
        p_n, p_np1 = ds.discrete_momenta(L, t, t + h, vn, vn1)
        worst = max(
            worst,
            rel_err(p_n, -central_diff(lambda x: ds.discrete_lagrangian(L, t, t + h, x, vn1), vn)),
            rel_err(p_np1, central_diff(lambda x: ds.discrete_lagrangian(L, t, t + h, vn, x), vn1)),
            rel_err(L.grad_v(t, v, vd), central_diff(lambda x: L.L(t, x, vd), v)),
            rel_err(L.grad_vdot(t, v, vd), central_diff(lambda x: L.L(t, v, x), vd)),
        )
    verdict(f"C8 gradient checks, {name}", worst < 1e-6,
            f"max relative error over 100 probes = {worst:.2e} (tol 1e-6)")
