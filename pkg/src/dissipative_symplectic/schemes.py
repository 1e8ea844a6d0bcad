"""Trapezoidal (MacKay) discrete Lagrangian and momentum-constrained steppers.

The discrete Lagrangian over one step is the trapezoidal rule applied to
``L`` with the forward difference ``(v_np1 - v_n) / h`` standing in for the
velocity.  Instead of the usual symplectic map (which needs an initial
momentum and is unstable for dissipative problems), each step enforces a
linear constraint ``alpha * p_n + beta * p_np1 = 0`` on the two discrete
momenta and solves it for ``v_np1`` by Newton's method.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, List, Optional

import numpy as np

from .core import Array, DomainError, LagrangianSystem, as_state

_EPS = np.finfo(float).eps


class SolverError(RuntimeError):
    """Base class for per-step solver failures; ``step`` is set by drivers."""

    step: Optional[int] = None


class NewtonConvergenceError(SolverError):
    def __init__(self, message, last_iterate, residual_norm):
        super().__init__(message)
        self.last_iterate = last_iterate
        self.residual_norm = residual_norm


class SingularityError(SolverError, ArithmeticError):
    pass


@dataclass(frozen=True)
class MomentumConstraint:
    """Coefficients of the vanishing combination ``alpha*p_n + beta*p_np1``."""

    alpha: float
    beta: float

    def __post_init__(self):
        if self.alpha == 0 and self.beta == 0:
            raise DomainError("(alpha, beta) must not both be zero")


METHOD_I = MomentumConstraint(0.0, 1.0)
METHOD_II = MomentumConstraint(-1.0, 1.0)


@dataclass(frozen=True)
class NewtonConfig:
    tol: float = 1e-12
    max_iter: int = 50
    fd_jacobian_step: float = 1e-6
    max_halvings: int = 30

    def __post_init__(self):
        if not self.tol > 0:
            raise DomainError(f"tol must be positive, got {self.tol}")
        if self.max_iter < 1:
            raise DomainError(f"max_iter must be >= 1, got {self.max_iter}")
        if not self.fd_jacobian_step > 0:
            raise DomainError("fd_jacobian_step must be positive")


@dataclass(frozen=True)
class StepDiagnostics:
    newton_iters: int
    final_residual_norm: float
    # rounding floor of the residual at the accepted iterate; the stopping
    # threshold is max(tol, residual_floor)
    residual_floor: float = 0.0


@dataclass
class Trajectory:
    times: Array
    states: Array
    diagnostics: List[StepDiagnostics] = field(default_factory=list)

    @property
    def values(self) -> Array:
        """First state component at every node (the whole state for N=1)."""
        return self.states[:, 0]


def _check_h(h):
    if not h > 0:
        raise DomainError(f"step size must be positive, got {h}")


def _ninf(a):
    return float(np.abs(a).max())


def _fd_jacobian(G, x, g_scale_step):
    n = x.size
    J = np.empty((n, n))
    for i in range(n):
        d = g_scale_step * (1.0 + abs(x[i]))
        xp = x.copy()
        xm = x.copy()
        xp[i] += d
        xm[i] -= d
        J[:, i] = (G(xp) - G(xm)) / (xp[i] - xm[i])
    return J


def _newton_direction(J, g):
    if J.shape == (1, 1):
        if J[0, 0] == 0:
            raise SingularityError("singular Newton Jacobian")
        dx = -g / J[0, 0]
    else:
        try:
            dx = np.linalg.solve(J, -g)
        except np.linalg.LinAlgError as exc:
            raise SingularityError(f"singular Newton Jacobian: {exc}") from exc
    if not np.all(np.isfinite(dx)):
        raise SingularityError("Newton Jacobian is numerically singular")
    return dx


def newton_solve(G: Callable[[Array], Array], x0: Array, cfg: NewtonConfig,
                 ref_scale: float = 0.0):
    """Damped Newton iteration for ``G(x) = 0``; returns ``(x, diag)``.

    Converged means ``|G(x)|_inf <= cfg.tol``.  An iterate that meets the
    tolerance still gets one more (checked) Newton correction, which removes
    the error left by the finite-difference Jacobian.  Iteration also stops
    at the rounding floor ``16 eps |J|_inf (1 + |x|_inf + ref_scale)``, the
    residual size that rounding of ``x`` alone produces; for very small or
    very large ``h`` this floor can exceed ``cfg.tol``.
    """
    x = np.array(x0, dtype=float)
    g = G(x)
    r = _ninf(g)
    if not np.isfinite(r):
        raise NewtonConvergenceError("residual is not finite at the initial guess", x, r)
    J = None
    floor = 0.0
    for it in range(cfg.max_iter + 1):
        if r == 0.0:
            return x, StepDiagnostics(it, r, floor)
        # a polish step may reuse the previous Jacobian
        if J is None or r > cfg.tol:
            J = _fd_jacobian(G, x, cfg.fd_jacobian_step)
            floor = float(16.0 * _EPS * np.abs(J).sum(axis=1).max() * (1.0 + _ninf(x) + ref_scale))
        if r <= floor:
            return x, StepDiagnostics(it, r, floor)
        dx = _newton_direction(J, g)
        if r <= cfg.tol:
            x_p = x + dx
            r_p = _ninf(G(x_p))
            if r_p < r:
                x, r = x_p, r_p
            return x, StepDiagnostics(it, r, floor)
        if it == cfg.max_iter:
            break

        lam = 1.0
        for _ in range(cfg.max_halvings + 1):
            x_new = x + lam * dx
            g_new = G(x_new)
            r_new = _ninf(g_new)
            if r_new < r or r_new <= max(cfg.tol, floor):
                break
            lam *= 0.5
        else:
            raise NewtonConvergenceError(
                f"line search failed to reduce residual {r:.3e}", x, r)
        x, g, r = x_new, g_new, r_new

    raise NewtonConvergenceError(
        f"Newton did not converge in {cfg.max_iter} iterations (residual {r:.3e})", x, r)


def discrete_lagrangian(Lsys: LagrangianSystem, t_n, t_np1, v_n, v_np1) -> float:
    """Trapezoidal discrete Lagrangian ``h/2 [L(t_n, v_n, D) + L(t_np1, v_np1, D)]``."""
    h = t_np1 - t_n
    _check_h(h)
    v_n = as_state(v_n, Lsys.dim)
    v_np1 = as_state(v_np1, Lsys.dim)
    D = (v_np1 - v_n) / h
    return 0.5 * h * (float(Lsys.L(t_n, v_n, D)) + float(Lsys.L(t_np1, v_np1, D)))


def _momenta(Lsys, t_n, t_np1, h, v_n, v_np1):
    D = (v_np1 - v_n) / h
    avg = 0.5 * (Lsys.grad_vdot(t_n, v_n, D) + Lsys.grad_vdot(t_np1, v_np1, D))
    p_n = avg - 0.5 * h * Lsys.grad_v(t_n, v_n, D)
    p_np1 = avg + 0.5 * h * Lsys.grad_v(t_np1, v_np1, D)
    return p_n, p_np1


def discrete_momenta(Lsys: LagrangianSystem, t_n, t_np1, v_n, v_np1):
    """Return ``(p_n, p_np1) = (-dL_h/dv_n, +dL_h/dv_np1)``."""
    h = t_np1 - t_n
    _check_h(h)
    v_n = as_state(v_n, Lsys.dim)
    v_np1 = as_state(v_np1, Lsys.dim)
    p_n, p_np1 = _momenta(Lsys, t_n, t_np1, h, v_n, v_np1)
    return np.asarray(p_n, dtype=float), np.asarray(p_np1, dtype=float)


def constraint_residual(Lsys: LagrangianSystem, constraint: MomentumConstraint,
                        t_n, h, v_n) -> Callable[[Array], Array]:
    """Return ``G(v_np1) = alpha * p_n + beta * p_np1`` for a fixed step."""
    a, b = constraint.alpha, constraint.beta
    t_np1 = t_n + h
    half_h = 0.5 * h
    gvd, gv = Lsys.grad_vdot, Lsys.grad_v
    gv_n_needed = a != 0

    def G(v_np1):
        D = (v_np1 - v_n) / h
        out = (0.5 * (a + b)) * (gvd(t_n, v_n, D) + gvd(t_np1, v_np1, D))
        if gv_n_needed:
            out = out - (a * half_h) * gv(t_n, v_n, D)
        if b != 0:
            out = out + (b * half_h) * gv(t_np1, v_np1, D)
        return np.asarray(out, dtype=float).reshape(v_n.shape)

    return G


def variational_step(Lsys: LagrangianSystem, constraint: MomentumConstraint,
                     t_n, h, v_n, cfg: NewtonConfig = NewtonConfig()):
    """Advance one step by solving ``alpha*p_n + beta*p_np1 = 0`` for ``v_np1``.

    The Newton iteration starts from the explicit-Euler predictor when the
    Lagrangian came from a first-order system, otherwise from ``v_n``.
    """
    _check_h(h)
    v_n = as_state(v_n, Lsys.dim)
    if Lsys.source is not None:
        guess = v_n + h * Lsys.source.rhs(t_n, v_n)
        if not np.all(np.isfinite(guess)):
            guess = v_n.copy()
    else:
        guess = v_n.copy()
    G = constraint_residual(Lsys, constraint, t_n, h, v_n)
    return solve_with_fallback(G, guess, v_n, cfg)


def solve_with_fallback(G, guess, v_n, cfg):
    """Newton from ``guess``; on failure retry once from ``v_n``.

    The explicit-Euler predictor can land on a stationary point of ``G``
    (e.g. ``v = 0`` for quadratic drag at ``h = 1``).
    """
    scale = _ninf(v_n)
    try:
        return newton_solve(G, guess, cfg, ref_scale=scale)
    except SolverError:
        if np.array_equal(guess, v_n):
            raise
    return newton_solve(G, v_n.copy(), cfg, ref_scale=scale)


def amplification_factor(constraint: MomentumConstraint, h: float) -> float:
    """Per-step multiplier of the constrained scheme on ``vdot = -v``."""
    _check_h(h)
    a, b = constraint.alpha, constraint.beta
    den = a + b + b * h + 0.5 * b * h * h
    if den == 0:
        raise SingularityError(f"amplification factor undefined at h={h} for {constraint}")
    return (a + b - a * h + 0.5 * a * h * h) / den


def num_steps(t_end: float, h: float) -> int:
    """Number of whole steps of size ``h`` that fit in ``[0, t_end]``."""
    _check_h(h)
    return int(np.floor(t_end / h * (1.0 + 1e-12)))


def _drive(step, t0, h, steps, v0, dim):
    if steps < 1:
        raise DomainError(f"steps must be >= 1, got {steps}")
    _check_h(h)
    states = np.empty((steps + 1, dim))
    states[0] = as_state(v0, dim)
    times = t0 + h * np.arange(steps + 1)
    diags = []
    for n in range(steps):
        try:
            v, d = step(times[n], states[n])
        except SolverError as exc:
            exc.step = n
            raise
        states[n + 1] = v
        diags.append(d)
    return Trajectory(times, states, diags)


def integrate(Lsys: LagrangianSystem, constraint: MomentumConstraint, t0, h, steps,
              v0, cfg: NewtonConfig = NewtonConfig()) -> Trajectory:
    """Run ``steps`` variational steps from ``(t0, v0)``.

    No initial momentum is needed; the constraint closes each step.
    A failing step re-raises its :class:`SolverError` with ``step`` set.
    """
    return _drive(lambda t, v: variational_step(Lsys, constraint, t, h, v, cfg),
                  t0, h, steps, v0, Lsys.dim)
