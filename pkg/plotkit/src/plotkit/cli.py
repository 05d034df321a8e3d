"""Batch figure CLI: `qmhd-plot <spec-file>` or per-kind shortcut flags."""

from __future__ import annotations

import argparse
import sys

from .figures import PLOT_KINDS, FigureSpec, PlotError, plot
from .specfile import load_spec


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="qmhd-plot",
        description="figures from solver snapshot/table CSV artifacts")
    parser.add_argument("spec", nargs="?", default=None,
                        help="figure spec file (key = value lines)")
    parser.add_argument("--kind", choices=PLOT_KINDS, default=None)
    parser.add_argument("--input", action="append", default=None,
                        help="input CSV (repeatable)")
    parser.add_argument("--output", default=None, help="output image path")
    parser.add_argument("--variable", default=None)
    parser.add_argument("--cut-y", dest="cut_y", type=float, default=None)
    parser.add_argument("--levels", default=None, help="contour levels lo:hi:step")
    parser.add_argument("--label", action="append", default=None,
                        help="legend label per input (repeatable)")
    parser.add_argument("--title", default=None)
    args = parser.parse_args(argv)

    try:
        if args.spec:
            spec = load_spec(args.spec)
        else:
            if not (args.kind and args.input and args.output):
                parser.error("without a spec file, --kind, --input and "
                             "--output are required")
            levels = None
            if args.levels:
                parts = [float(v) for v in args.levels.split(":")]
                if len(parts) != 3:
                    raise PlotError("levels must be lo:hi:step")
                levels = tuple(parts)
            spec = FigureSpec(kind=args.kind, inputs=args.input,
                              output=args.output,
                              variable=args.variable or "rho",
                              cut_y=args.cut_y, levels=levels,
                              labels=args.label or [], title=args.title)
        out = plot(spec)
        print(f"wrote {out}")
        return 0
    except PlotError as exc:
        print(f"plot error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
