"""Benchmark harness: error traces, step-size sweeps and CSV output.

Errors are sampled at the integrator nodes only.  The maximum error is
taken over the whole trace, including ``t = 0`` and any initial transient.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, TextIO, Tuple

import numpy as np

from . import baselines, problems
from .core import least_squares_adapter
from .schemes import (METHOD_I, METHOD_II, MomentumConstraint, NewtonConfig, SolverError,
                      Trajectory, integrate, num_steps)

PROBLEMS = ("linear", "qdrag", "channel")
METHODS = ("method1", "method2", "alphabeta", "explicit-euler", "implicit-euler", "rk4")
VARIATIONAL = ("method1", "method2", "alphabeta")

TRAJECTORY_HEADER = ("t", "v", "exact", "abs_error")
SWEEP_HEADER = ("method", "h", "max_abs_error", "final_abs_error", "steps")


class SpecError(ValueError):
    """Invalid run/sweep parameters."""


@dataclass(frozen=True)
class RunSpec:
    problem: str
    method: str
    h: float
    t_end: float
    gamma: float = 2.0
    alpha: Optional[float] = None
    beta: Optional[float] = None
    newton_tol: float = 1e-12
    newton_max_iter: int = 50

    def __post_init__(self):
        if self.problem not in PROBLEMS:
            raise SpecError(f"unknown problem {self.problem!r}")
        if self.method not in METHODS:
            raise SpecError(f"unknown method {self.method!r}")
        if not (np.isfinite(self.h) and self.h > 0):
            raise SpecError(f"h must be positive and finite, got {self.h}")
        if not (np.isfinite(self.t_end) and self.t_end >= self.h):
            raise SpecError(f"t_end must be finite and >= h, got {self.t_end}")
        if not np.isfinite(self.gamma):
            raise SpecError("gamma must be finite")
        if self.method == "alphabeta":
            if self.alpha is None or self.beta is None:
                raise SpecError("alphabeta requires both alpha and beta")
            if self.alpha == 0 and self.beta == 0:
                raise SpecError("alpha and beta must not both be zero")
        elif self.alpha is not None or self.beta is not None:
            raise SpecError("alpha/beta are only valid with the alphabeta method")
        if not self.newton_tol > 0 or self.newton_max_iter < 1:
            raise SpecError("newton tol must be > 0 and max_iter >= 1")

    @property
    def steps(self) -> int:
        return num_steps(self.t_end, self.h)

    @property
    def newton(self) -> NewtonConfig:
        return NewtonConfig(tol=self.newton_tol, max_iter=self.newton_max_iter)

    def constraint(self) -> MomentumConstraint:
        if self.method == "method1":
            return METHOD_I
        if self.method == "method2":
            return METHOD_II
        return MomentumConstraint(float(self.alpha), float(self.beta))


@dataclass(frozen=True)
class SweepRecord:
    method: str
    h: float
    max_abs_error: float
    final_abs_error: float
    steps: int


def _problem(spec: RunSpec):
    """Return ``(residual_system, lagrangian_system, exact, v0)`` for a spec."""
    if spec.problem == "linear":
        sys, exact = problems.linear_decay()
        return sys, least_squares_adapter(sys), exact, exact.v0
    if spec.problem == "qdrag":
        sys, exact = problems.quadratic_drag()
        return sys, least_squares_adapter(sys), exact, exact.v0
    params = problems.ChannelParams(spec.gamma)
    # baselines integrate the channel-averaged ODE, the variational methods
    # the channel-integrated Lagrangian
    return (problems.channel_averaged_system(params), problems.channel_lagrangian(params),
            problems.channel_exact(params), 0.0)


def simulate(spec: RunSpec) -> Tuple[Trajectory, problems.ExactSolution]:
    """Integrate one (problem, method, h) cell; raises :class:`SolverError` on failure."""
    sys, lag, exact, v0 = _problem(spec)
    steps = spec.steps
    if spec.method in VARIATIONAL:
        traj = integrate(lag, spec.constraint(), 0.0, spec.h, steps, [v0], spec.newton)
    elif spec.method == "explicit-euler":
        traj = baselines.integrate_explicit_euler(sys, 0.0, spec.h, steps, [v0])
    elif spec.method == "implicit-euler":
        traj = baselines.integrate_implicit_euler(sys, 0.0, spec.h, steps, [v0], spec.newton)
    else:
        traj = baselines.integrate_rk4(sys, 0.0, spec.h, steps, [v0])
    return traj, exact


def error_trace(traj: Trajectory, exact) -> np.ndarray:
    """Return an ``(n, 2)`` array of ``(t_n, |v_n - exact(t_n)|)``."""
    if len(traj.times) == 0:
        raise ValueError("empty trajectory")
    ref = np.asarray(exact(traj.times), dtype=float)
    return np.column_stack([traj.times, np.abs(traj.values - ref)])


def max_abs_error(trace) -> float:
    trace = np.asarray(trace, dtype=float)
    if trace.size == 0:
        raise ValueError("empty error trace")
    return float(np.max(trace[:, 1]))


def fmt(x) -> str:
    """Shortest round-trip decimal for a float (``repr``)."""
    return repr(float(x))


def write_trajectory_csv(out: TextIO, traj: Trajectory, exact) -> None:
    ref = np.asarray(exact(traj.times), dtype=float)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(TRAJECTORY_HEADER)
    for t, v, e in zip(traj.times, traj.values, ref):
        w.writerow((fmt(t), fmt(v), fmt(e), fmt(abs(v - e))))


def read_trajectory_csv(src: TextIO) -> np.ndarray:
    """Parse a trajectory CSV into an ``(n, 4)`` float array."""
    rows = list(csv.reader(src))
    if tuple(rows[0]) != TRAJECTORY_HEADER:
        raise ValueError(f"unexpected header {rows[0]}")
    return np.array([[float(c) for c in r] for r in rows[1:]], dtype=float)


def run(spec: RunSpec, out: TextIO) -> np.ndarray:
    """Integrate ``spec``, write its trajectory CSV to ``out`` and return the error trace."""
    traj, exact = simulate(spec)
    write_trajectory_csv(out, traj, exact)
    return error_trace(traj, exact)


def trajectory_csv(spec: RunSpec) -> str:
    buf = io.StringIO()
    run(spec, buf)
    return buf.getvalue()


def sweep_cell(spec: RunSpec) -> SweepRecord:
    try:
        traj, exact = simulate(spec)
    except SolverError:
        return SweepRecord(spec.method, spec.h, float("nan"), float("nan"), spec.steps)
    trace = error_trace(traj, exact)
    return SweepRecord(spec.method, spec.h, max_abs_error(trace), float(trace[-1, 1]),
                       len(traj.times) - 1)


def sweep_specs(problem: str, methods: Sequence[str], h_list: Iterable[float], t_end: float,
                **kwargs) -> List[RunSpec]:
    """Grid of specs: methods in the given order, step sizes descending."""
    hs = sorted({float(h) for h in h_list}, reverse=True)
    if not hs:
        raise SpecError("empty h list")
    specs = []
    for m in methods:
        extra = dict(kwargs)
        if m != "alphabeta":
            extra.pop("alpha", None)
            extra.pop("beta", None)
        for h in hs:
            specs.append(RunSpec(problem, m, h, t_end, **extra))
    return specs


def sweep(problem: str, methods: Sequence[str], h_list: Iterable[float], t_end: float,
          **kwargs) -> Tuple[List[SweepRecord], int]:
    """Run every (method, h) cell; returns ``(records, number_of_failed_cells)``.

    Failed cells (Newton breakdown) carry ``nan`` errors.
    """
    records = [sweep_cell(s) for s in sweep_specs(problem, methods, h_list, t_end, **kwargs)]
    failed = sum(1 for r in records if np.isnan(r.max_abs_error))
    return records, failed


def write_sweep_csv(out: TextIO, records: Iterable[SweepRecord]) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(SWEEP_HEADER)
    for r in records:
        w.writerow((r.method, fmt(r.h), fmt(r.max_abs_error), fmt(r.final_abs_error), r.steps))


def convergence_slope(hs, errors) -> float:
    """Least-squares slope of ``log(error)`` against ``log(h)``."""
    return float(np.polyfit(np.log(np.asarray(hs, float)), np.log(np.asarray(errors, float)), 1)[0])
