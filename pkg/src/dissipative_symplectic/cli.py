"""Command-line front end: ``run`` one cell or ``sweep`` a grid, emitting CSV.

Exit codes: 0 success, 2 Newton failure during ``run``, 64 invalid usage.
"""

from __future__ import annotations

import argparse
import sys
from contextlib import contextmanager

from . import harness
from .schemes import SolverError

EX_OK = 0
EX_SOLVER = 2
EX_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _h_list(text):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid h list {text!r}")


def _common(p):
    p.add_argument("--problem", choices=harness.PROBLEMS, required=True)
    p.add_argument("--t-end", type=float, required=True)
    p.add_argument("--gamma", type=float, default=2.0, help="channel pressure gradient")
    p.add_argument("--alpha", type=float, help="alphabeta method only")
    p.add_argument("--beta", type=float, help="alphabeta method only")
    p.add_argument("--newton-tol", type=float, default=1e-12,
                   help="infinity-norm threshold on alpha*p_n + beta*p_np1 as given "
                        "(the constraint is not normalised)")
    p.add_argument("--newton-max-iter", type=int, default=50)
    p.add_argument("--out", default="-", help="output path (default stdout)")


def build_parser():
    parser = _Parser(prog="dissipative-symplectic", description=__doc__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("run", help="integrate one problem/method/h and print the trajectory")
    _common(p)
    p.add_argument("--method", choices=harness.METHODS, required=True)
    p.add_argument("--h", type=float, required=True)

    p = sub.add_parser("sweep", help="max-error table over methods and step sizes")
    _common(p)
    p.add_argument("--method", choices=harness.METHODS, action="append", required=True,
                   help="repeatable; rows follow the given order")
    p.add_argument("--h-list", type=_h_list)
    p.add_argument("--h", type=float, action="append", help="alternative to --h-list")
    return parser


@contextmanager
def _output(path):
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as f:
            yield f


def _extra(args):
    return dict(gamma=args.gamma, alpha=args.alpha, beta=args.beta,
                newton_tol=args.newton_tol, newton_max_iter=args.newton_max_iter)


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "run":
            spec = harness.RunSpec(args.problem, args.method, args.h, args.t_end, **_extra(args))
        else:
            hs = list(args.h_list or []) + list(args.h or [])
            specs = harness.sweep_specs(args.problem, args.method, hs, args.t_end, **_extra(args))
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EX_USAGE
    except harness.SpecError as exc:
        print(f"dissipative-symplectic: error: {exc}", file=sys.stderr)
        return EX_USAGE

    if args.command == "run":
        try:
            # integrate before opening the output so a failure leaves no partial file
            traj, exact = harness.simulate(spec)
        except SolverError as exc:
            print(f"dissipative-symplectic: solver failure at step {exc.step}: {exc}",
                  file=sys.stderr)
            return EX_SOLVER
        with _output(args.out) as out:
            harness.write_trajectory_csv(out, traj, exact)
        return EX_OK

    records = [harness.sweep_cell(s) for s in specs]
    failed = sum(1 for r in records if r.max_abs_error != r.max_abs_error)
    with _output(args.out) as out:
        harness.write_sweep_csv(out, records)
    if failed:
        print(f"dissipative-symplectic: warning: {failed} sweep cell(s) failed", file=sys.stderr)
    return EX_OK


if __name__ == "__main__":
    sys.exit(main())
