"""Command-line interface for the experiment harness.

Subcommands map one-to-one onto the harness runners::

    hamkrylov convergence      error vs basis dimension sweeps
    hamkrylov phi-consistency  explicit vs implicit phi at full dimension
    hamkrylov adaptive         per-step error and estimate tables
    hamkrylov timings          median basis-generation times + counters
    hamkrylov export-matrix    Matrix Market dump of a problem matrix

Output lands in --out, the HAMKRYLOV_OUTPUT_DIR environment variable, or
./results, in that order of precedence.  Exit code is nonzero with a
diagnostic on stderr if any cell fails.
"""

import argparse
import sys

from .harness import (
    RunConfig,
    export_problem_matrix,
    run_adaptive_table,
    run_convergence,
    run_phi_consistency,
    run_timings,
)
from .krylov import METHOD_IDS
from .matfun import FUNCTION_IDS
from .problems import PROBLEM_IDS


def _add_common(parser, rmax_default=50, methods=METHOD_IDS, functions=False):
    parser.add_argument(
        "--problem", action="append", choices=PROBLEM_IDS, metavar="ID",
        help="problem to run, repeatable (default: all)",
    )
    if methods is not None:
        parser.add_argument(
            "--method", action="append", choices=methods, metavar="TAG",
            help=f"method tag in {'/'.join(methods)}, repeatable (default: all)",
        )
    parser.add_argument(
        "--rmax", type=int, default=rmax_default,
        help=f"largest r of the sweep (default {rmax_default})",
    )
    parser.add_argument("--h", type=float, default=0.01, help="step size (default 0.01)")
    parser.add_argument("--seed", type=int, default=42, help="seed for b (default 42)")
    parser.add_argument(
        "--out", default=None,
        help="output directory (default: $HAMKRYLOV_OUTPUT_DIR or ./results)",
    )
    parser.add_argument(
        "--no-rejorth", action="store_true",
        help="disable re-orthogonalization sweeps in every builder",
    )
    if functions:
        parser.add_argument(
            "--function", action="append", choices=FUNCTION_IDS, metavar="F",
            help="matrix function, repeatable (default: all three)",
        )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hamkrylov",
        description="Krylov approximation experiments for Hamiltonian matrices",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    conv = sub.add_parser("convergence", help="error vs dimension sweep")
    _add_common(conv, functions=True)

    phi = sub.add_parser("phi-consistency", help="phi explicit vs implicit check")
    _add_common(phi, methods=None)

    adap = sub.add_parser("adaptive", help="error/estimate table per step")
    _add_common(adap, rmax_default=9, methods=("A", "HL"))

    tim = sub.add_parser("timings", help="median basis-generation timings")
    _add_common(tim)

    exp = sub.add_parser("export-matrix", help="write problems as Matrix Market files")
    exp.add_argument(
        "--problem", action="append", choices=PROBLEM_IDS, metavar="ID",
        help="problem to export, repeatable (default: all)",
    )
    exp.add_argument("--out", default=None, help="output directory")
    return parser


def _config(args, methods=METHOD_IDS):
    return RunConfig(
        problems=tuple(args.problem or PROBLEM_IDS),
        methods=tuple(getattr(args, "method", None) or methods),
        r_values=tuple(range(2, args.rmax + 1, 2)),
        h=args.h,
        seed=args.seed,
        functions=tuple(getattr(args, "function", None) or FUNCTION_IDS),
        output_dir=args.out,
        rejorth=not args.no_rejorth,
    )


def _dispatch(args):
    if args.command == "convergence":
        return run_convergence(_config(args))
    if args.command == "phi-consistency":
        return [run_phi_consistency(_config(args))]
    if args.command == "adaptive":
        paths = []
        for pid in args.problem or ("kg1", "ns2"):
            for method in args.method or ("A", "HL"):
                paths.append(
                    run_adaptive_table(
                        pid, method, args.rmax, h=args.h, seed=args.seed,
                        output_dir=args.out, rejorth=not args.no_rejorth,
                    )
                )
        return paths
    if args.command == "timings":
        return [run_timings(_config(args))]
    if args.command == "export-matrix":
        return [
            export_problem_matrix(pid, output_dir=args.out)
            for pid in args.problem or PROBLEM_IDS
        ]
    raise ValueError(f"unknown command {args.command!r}")


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        paths = _dispatch(args)
    except Exception as exc:  # CLI boundary: turn failures into exit codes
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for path in paths:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
