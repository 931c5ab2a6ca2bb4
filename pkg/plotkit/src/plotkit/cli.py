"""Script entry points: plot-contour and plot-surface."""
from __future__ import annotations

import argparse
import sys

from .io import GridFormatError, TraceFormatError
from .plots import DimensionError, plot_contour, plot_surface


def main_contour(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="plot-contour",
        description="Contour plot of an exported objective grid with "
                    "trajectory markers from a trace CSV",
    )
    parser.add_argument("trace", help="trace CSV from 'anneal-kit run'")
    parser.add_argument("grid", help="grid CSV from --export-grid")
    parser.add_argument("-o", "--out", required=True,
                        help="output image (format by extension)")
    parser.add_argument("--levels", type=int, default=30)
    args = parser.parse_args(argv)
    try:
        result = plot_contour(args.trace, args.grid, args.out,
                              levels=args.levels)
    except (TraceFormatError, GridFormatError, DimensionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    counts = ", ".join(f"{k}={v}" for k, v in result.marker_counts.items())
    print(f"wrote {result.out_path} ({counts})")
    return 0


def main_surface(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="plot-surface",
        description="3-D surface plot of an exported objective grid",
    )
    parser.add_argument("grid", help="grid CSV from --export-grid")
    parser.add_argument("-o", "--out", required=True,
                        help="output image (format by extension)")
    args = parser.parse_args(argv)
    try:
        result = plot_surface(args.grid, args.out)
    except GridFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    note = (f", min at ({result.annotated_min[0]:g}, "
            f"{result.annotated_min[1]:g})" if result.annotated_min else "")
    print(f"wrote {result.out_path}{note}")
    return 0


if __name__ == "__main__":
    sys.exit(main_contour())
