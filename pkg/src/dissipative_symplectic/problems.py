"""Bundled test problems with exact solutions.

* linear decay ``vdot = -v``, ``v(0) = 1``, exact ``exp(-t)``
* quadratic drag ``vdot = -v**2``, ``v(0) = 1``, exact ``1 / (1 + t)``
* plane Poiseuille start-up flow reduced to one amplitude ``v(t)`` with the
  profile ``v(t) * (1 - y**2)``; exact centerline velocity from the Fourier
  series of the heat-equation solution.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import DomainError, LagrangianSystem, ResidualSystem


@dataclass(frozen=True)
class ExactSolution:
    eval: Callable[[float], float]
    v0: float

    def __call__(self, t):
        return self.eval(t)


@dataclass(frozen=True)
class ChannelParams:
    gamma: float = 2.0
    series_tol: float = 1e-13

    def __post_init__(self):
        if not np.isfinite(self.gamma):
            raise DomainError("gamma must be finite")
        if not self.series_tol > 0:
            raise DomainError("series_tol must be positive")


def linear_decay():
    sys = ResidualSystem(
        1,
        lambda t, v: -v,
        lambda t, v: np.array([[-1.0]]),
    )
    return sys, ExactSolution(lambda t: np.exp(-np.asarray(t, float)), 1.0)


def quadratic_drag():
    sys = ResidualSystem(
        1,
        lambda t, v: -v * v,
        lambda t, v: np.reshape(-2.0 * np.asarray(v, float), (1, 1)),
    )
    return sys, ExactSolution(lambda t: 1.0 / (1.0 + np.asarray(t, float)), 1.0)


def channel_lagrangian(params: ChannelParams = ChannelParams()) -> LagrangianSystem:
    """Channel-integrated least-squares Lagrangian of the reduced model.

    ``L = g^2 - 4 g v + 4 v^2 + 4/3 (2v - g) vdot + 8/15 vdot^2`` with
    ``g = gamma``; it is ``int_{-1}^{1} 0.5 R^2 dy`` for the profile residual
    ``R = -g + 2 v + vdot (1 - y^2)``.
    """
    g = float(params.gamma)

    def L(t, v, vdot):
        v, vdot = float(np.squeeze(v)), float(np.squeeze(vdot))
        return (g * g - 4.0 * g * v + 4.0 * v * v + (4.0 / 3.0) * (-g + 2.0 * v) * vdot
                + (8.0 / 15.0) * vdot * vdot)

    def grad_v(t, v, vdot):
        return -4.0 * g + 8.0 * v + (8.0 / 3.0) * vdot

    def grad_vdot(t, v, vdot):
        return (4.0 / 3.0) * (-g + 2.0 * v) + (16.0 / 15.0) * vdot

    return LagrangianSystem(1, L, grad_v, grad_vdot)


def channel_averaged_system(params: ChannelParams = ChannelParams()) -> ResidualSystem:
    """Channel-averaged residual ``-2g + 4v + 4/3 vdot = 0`` as ``vdot = 1.5 g - 3 v``."""
    g = float(params.gamma)
    return ResidualSystem(
        1,
        lambda t, v: 1.5 * g - 3.0 * v,
        lambda t, v: np.array([[-3.0]]),
    )


# beyond this exponent the bracket 1 - exp(-x) is exactly 1.0 in double precision
_SATURATED = 50.0


def _series_terms(params: ChannelParams):
    g = float(params.gamma)
    if g == 0.0:
        return np.empty(0), np.empty(0)
    # number of odd terms with 16|g| / (n pi)^3 >= series_tol
    n_max = (16.0 * abs(g) / params.series_tol) ** (1.0 / 3.0) / np.pi
    n = np.arange(1, int(n_max) + 2, 2, dtype=float)
    n = n[16.0 * abs(g) / (n * np.pi) ** 3 >= params.series_tol]
    # sin(n pi / 2) for odd n, taken exactly
    sign = np.where(((n - 1) / 2) % 2 == 0, 1.0, -1.0)
    coef = 16.0 * g / (n * np.pi) ** 3 * sign
    rate = (0.5 * np.pi * n) ** 2
    return coef, rate


def channel_exact_centerline(params: ChannelParams, t):
    """Exact start-up centerline velocity ``u(0, t)``; vectorised over ``t``.

    Terms are kept while their envelope ``16 |gamma| / (n pi)^3`` is at least
    ``params.series_tol``.  Terms whose exponential has saturated contribute
    their full coefficient, summed once as a suffix sum.
    """
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0):
        raise DomainError("t must be nonnegative")
    coef, rate = _series_terms(params)
    flat = t_arr.ravel()
    if coef.size == 0:
        out = np.zeros_like(flat)
        return out.reshape(t_arr.shape) if t_arr.ndim else float(out[0])

    order = np.argsort(flat, kind="stable")
    ts = flat[order]
    # suffix[k] = sum of coef[k:], accumulated from the small end
    suffix = np.concatenate([np.cumsum(coef[::-1])[::-1], [0.0]])
    with np.errstate(divide="ignore"):
        k = np.searchsorted(rate, _SATURATED / ts, side="right")
    neg_k = -k
    head = np.zeros_like(ts)
    for j in range(int(k.max())):
        # k is nonincreasing along ts, so points with k > j form a prefix
        m = np.searchsorted(neg_k, -j, side="left")
        head[:m] += coef[j] * -np.expm1(-rate[j] * ts[:m])
    vals = head + suffix[k]

    out = np.empty_like(flat)
    out[order] = vals
    return out.reshape(t_arr.shape) if t_arr.ndim else float(out[0])


def channel_exact(params: ChannelParams = ChannelParams()) -> ExactSolution:
    return ExactSolution(lambda t: channel_exact_centerline(params, t), 0.0)
