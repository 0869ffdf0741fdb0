"""Command line entry point.

`plot --csv results/convergence.csv --kind convergence --out figures`
renders the figures for one CSV.  Errors land on stderr with a nonzero
exit code; malformed rows are reported with their row number.
"""

import argparse
import sys
from pathlib import Path

from hamplots.figures import (
    FigureSpec,
    KINDS,
    RASTER_FORMAT,
    VECTOR_FORMATS,
    plot_convergence,
    plot_timings,
)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="plot",
        description="render experiment CSVs as convergence or timing figures",
    )
    parser.add_argument(
        "--csv", required=True, type=Path, metavar="FILE", help="input CSV file"
    )
    parser.add_argument(
        "--kind", required=True, choices=KINDS, help="figure family to render"
    )
    parser.add_argument(
        "--out",
        type=Path,
        default=Path("figures"),
        metavar="DIR",
        help="output directory (default: ./figures)",
    )
    parser.add_argument(
        "--problem",
        action="append",
        metavar="ID",
        help="problem to include, repeatable (default: all in the CSV)",
    )
    parser.add_argument(
        "--method",
        action="append",
        metavar="TAG",
        help="method to include, repeatable (default: all in the CSV)",
    )
    parser.add_argument(
        "--format",
        choices=(RASTER_FORMAT,) + VECTOR_FORMATS,
        default=RASTER_FORMAT,
        help="image format (default: png)",
    )
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    spec = FigureSpec(
        input_csv=args.csv,
        kind=args.kind,
        output=args.out,
        problems=tuple(args.problem) if args.problem else None,
        methods=tuple(args.method) if args.method else None,
        image_format=args.format,
    )
    try:
        if args.kind == "convergence":
            paths = plot_convergence(spec)
        else:
            paths = [plot_timings(spec)]
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for path in paths:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
