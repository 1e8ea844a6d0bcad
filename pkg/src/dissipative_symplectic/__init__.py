"""Unconditionally stable variational integrators for dissipative ODEs.

A first-order system ``vdot = f(t, v)`` is recast through the least-squares
Lagrangian ``0.5 * (vdot - f)**2`` and integrated with MacKay's trapezoidal
discrete Lagrangian, closing each step by a linear constraint on the two
discrete momenta.
"""

from .core import (ContractError, DomainError, LagrangianSystem, ResidualSystem,
                   finite_difference_system, least_squares_adapter, residual)
from .schemes import (METHOD_I, METHOD_II, MomentumConstraint, NewtonConfig,
                      NewtonConvergenceError, SingularityError, SolverError,
                      StepDiagnostics, Trajectory, amplification_factor,
                      discrete_lagrangian, discrete_momenta, integrate, num_steps,
                      variational_step)
from .baselines import (explicit_euler_step, implicit_euler_step, integrate_explicit_euler,
                        integrate_implicit_euler, integrate_rk4, rk4_step)
from .problems import (ChannelParams, ExactSolution, channel_averaged_system,
                       channel_exact, channel_exact_centerline, channel_lagrangian,
                       linear_decay, quadratic_drag)

__version__ = "0.1.0"
