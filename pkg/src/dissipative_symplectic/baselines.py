"""Reference integrators acting directly on a :class:`ResidualSystem`."""

from __future__ import annotations

import numpy as np

from .core import ResidualSystem, as_state
from .schemes import (NewtonConfig, StepDiagnostics, Trajectory, _check_h, _drive,
                      solve_with_fallback)


def explicit_euler_step(sys: ResidualSystem, t_n, h, v_n):
    _check_h(h)
    v_n = as_state(v_n, sys.dim)
    return v_n + h * sys.rhs(t_n, v_n)


def implicit_euler_step(sys: ResidualSystem, t_n, h, v_n, cfg: NewtonConfig = NewtonConfig()):
    """Solve ``v - v_n - h f(t_n + h, v) = 0`` by Newton from the explicit-Euler guess.

    Returns only the new state; use :func:`implicit_euler_step_diag` for the
    Newton diagnostics.
    """
    return implicit_euler_step_diag(sys, t_n, h, v_n, cfg)[0]


def implicit_euler_step_diag(sys, t_n, h, v_n, cfg=NewtonConfig()):
    _check_h(h)
    v_n = as_state(v_n, sys.dim)
    t_np1 = t_n + h

    def G(v):
        return v - v_n - h * sys.rhs(t_np1, v)

    guess = v_n + h * sys.rhs(t_n, v_n)
    if not np.all(np.isfinite(guess)):
        guess = v_n.copy()
    return solve_with_fallback(G, guess, v_n, cfg)


def rk4_step(sys: ResidualSystem, t_n, h, v_n):
    """Classical four-stage Runge-Kutta step."""
    _check_h(h)
    v_n = as_state(v_n, sys.dim)
    f = sys.rhs
    k1 = f(t_n, v_n)
    k2 = f(t_n + 0.5 * h, v_n + 0.5 * h * k1)
    k3 = f(t_n + 0.5 * h, v_n + 0.5 * h * k2)
    k4 = f(t_n + h, v_n + h * k3)
    return v_n + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


_NO_NEWTON = StepDiagnostics(0, 0.0)


def integrate_explicit_euler(sys, t0, h, steps, v0) -> Trajectory:
    return _drive(lambda t, v: (explicit_euler_step(sys, t, h, v), _NO_NEWTON),
                  t0, h, steps, v0, sys.dim)


def integrate_implicit_euler(sys, t0, h, steps, v0, cfg=NewtonConfig()) -> Trajectory:
    return _drive(lambda t, v: implicit_euler_step_diag(sys, t, h, v, cfg),
                  t0, h, steps, v0, sys.dim)


def integrate_rk4(sys, t0, h, steps, v0) -> Trajectory:
    return _drive(lambda t, v: (rk4_step(sys, t, h, v), _NO_NEWTON),
                  t0, h, steps, v0, sys.dim)
