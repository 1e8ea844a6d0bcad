"""System abstractions and the least-squares Lagrangian adapter.

A first-order system ``vdot = f(t, v)`` is turned into a second-order
variational problem by taking the Lagrangian ``L = 0.5 * |vdot - f(t, v)|^2``.
The conjugate momentum of that Lagrangian is the residual itself, which is
zero along the true motion.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

Array = np.ndarray


class ContractError(ValueError):
    """Raised when an argument violates a function's contract (e.g. shape)."""


class DomainError(ValueError):
    """Raised for arguments outside the mathematical domain (e.g. h <= 0)."""


def as_state(v, dim: int) -> Array:
    """Return ``v`` as a 1-D float array of length ``dim``."""
    arr = np.atleast_1d(np.asarray(v, dtype=float))
    if arr.shape != (dim,):
        raise ContractError(f"expected state of shape ({dim},), got {arr.shape}")
    return arr


@dataclass(frozen=True)
class ResidualSystem:
    """First-order system ``vdot = f(t, v)``.

    ``jacobian(t, v)`` returns the ``dim x dim`` matrix ``df/dv`` with row
    ``i`` holding the gradient of ``f_i``.
    """

    dim: int
    f: Callable[[float, Array], Array]
    jacobian: Callable[[float, Array], Array]

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 1:
            raise ContractError(f"dim must be a positive integer, got {self.dim!r}")

    def rhs(self, t: float, v) -> Array:
        v = np.asarray(v, dtype=float)
        return np.reshape(np.asarray(self.f(t, v), dtype=float), (self.dim,))

    def jac(self, t: float, v) -> Array:
        v = np.asarray(v, dtype=float)
        return np.reshape(np.asarray(self.jacobian(t, v), dtype=float), (self.dim, self.dim))


@dataclass(frozen=True)
class LagrangianSystem:
    """Lagrangian ``L(t, v, vdot)`` together with its partial gradients.

    ``source`` is set when the Lagrangian was built from a first-order
    system; steppers use it to form an explicit-Euler initial guess.
    """

    dim: int
    L: Callable[[float, Array, Array], float]
    grad_v: Callable[[float, Array, Array], Array]
    grad_vdot: Callable[[float, Array, Array], Array]
    source: Optional[ResidualSystem] = None

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 1:
            raise ContractError(f"dim must be a positive integer, got {self.dim!r}")


def residual(sys: ResidualSystem, t: float, v, vdot) -> Array:
    """Residual ``vdot - f(t, v)``."""
    v = as_state(v, sys.dim)
    vdot = as_state(vdot, sys.dim)
    return vdot - sys.rhs(t, v)


def least_squares_adapter(sys: ResidualSystem) -> LagrangianSystem:
    """Wrap a first-order system as the Lagrangian ``0.5 * |vdot - f|^2``.

    The gradients are ``dL/dvdot = R`` and ``dL/dv = -J^T R`` with
    ``R = vdot - f(t, v)`` and ``J = df/dv``.
    """

    def L(t, v, vdot):
        r = vdot - sys.rhs(t, v)
        return 0.5 * float(r @ r)

    def grad_vdot(t, v, vdot):
        return vdot - sys.rhs(t, v)

    def grad_v(t, v, vdot):
        r = vdot - sys.rhs(t, v)
        return -(sys.jac(t, v).T @ r)

    return LagrangianSystem(sys.dim, L, grad_v, grad_vdot, source=sys)


def finite_difference_system(dim: int, f: Callable[[float, Array], Array]) -> ResidualSystem:
    """Build a :class:`ResidualSystem` whose Jacobian is a central difference.

    The step for column ``i`` is ``sqrt(eps) * (1 + |v_i|)``.
    """
    scale = np.sqrt(np.finfo(float).eps)

    def jacobian(t, v):
        v = np.asarray(v, dtype=float).reshape(dim)
        J = np.empty((dim, dim))
        for i in range(dim):
            step = scale * (1.0 + abs(v[i]))
            vp = v.copy()
            vm = v.copy()
            vp[i] += step
            vm[i] -= step
            J[:, i] = (np.reshape(f(t, vp), dim) - np.reshape(f(t, vm), dim)) / (vp[i] - vm[i])
        return J

    return ResidualSystem(dim, f, jacobian)
