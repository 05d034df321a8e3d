"""Command-line interface.

Subcommands: run, convergence, reference, list-problems, monitors.  Flags
mirror the config keys and override file values.  Exit codes: 0 success,
2 config error, 3 solver failure, 4 IO failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import workbench as wb
from .config import RunConfig
from .physics import PositivityError
from .problems import PROBLEMS, build


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--problem", type=str, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--ny", type=int, default=None)
    p.add_argument("--gamma", type=float, default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--sc", type=float, default=None)
    p.add_argument("--pr", type=float, default=None)
    p.add_argument("--t-end", dest="t_end", type=float, default=None)
    p.add_argument("--bc-x", dest="bc_x", type=str, default=None)
    p.add_argument("--bc-y", dest="bc_y", type=str, default=None)
    p.add_argument("--outdir", type=str, default=None)
    p.add_argument("--cadence-steps", dest="cadence_steps", type=int, default=None)
    p.add_argument("--cadence-time", dest="cadence_time", type=float, default=None)
    p.add_argument("--formats", type=str, default=None,
                   help="comma-separated: csv,vtk")
    p.add_argument("--workers", type=int, default=None)


def _flag_overrides(args: argparse.Namespace) -> dict:
    keys = ("problem", "n", "ny", "gamma", "alpha", "beta", "sc", "pr",
            "t_end", "bc_x", "bc_y", "outdir", "cadence_steps",
            "cadence_time", "workers")
    out = {k: getattr(args, k) for k in keys if getattr(args, k, None) is not None}
    if getattr(args, "formats", None):
        out["formats"] = tuple(s.strip() for s in args.formats.split(",") if s.strip())
    return out


def _load_config(args: argparse.Namespace) -> RunConfig:
    text = ""
    if args.config:
        text = Path(args.config).read_text()
    return wb.parse_config(text, _flag_overrides(args))


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="qmhd",
        description="quasi-gasdynamic MHD solver and benchmark workbench")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute one configured run")
    p_run.add_argument("config", nargs="?", default=None,
                       help="flat key=value config file")
    _add_config_flags(p_run)

    p_conv = sub.add_parser("convergence", help="resolution study with table output")
    p_conv.add_argument("config", nargs="?", default=None)
    p_conv.add_argument("--n-list", type=str, required=True,
                        help="comma-separated resolutions, e.g. 128,256,512")
    p_conv.add_argument("--fine-n", type=int, default=20000,
                        help="self-reference resolution for Riemann problems")
    p_conv.add_argument("--table", type=str, default=None,
                        help="output CSV path (default under outdir)")
    _add_config_flags(p_conv)

    p_ref = sub.add_parser("reference", help="build and cache a fine self-reference")
    p_ref.add_argument("problem", type=str)
    p_ref.add_argument("--fine-n", type=int, default=20000)
    p_ref.add_argument("--outdir", type=str, default=None)

    sub.add_parser("list-problems", help="list catalog problems")

    p_mon = sub.add_parser("monitors", help="print initial-state monitors of a problem")
    p_mon.add_argument("problem", type=str)
    p_mon.add_argument("--n", type=int, default=64)

    args = parser.parse_args(argv)

    try:
        if args.command == "list-problems":
            for name, spec in sorted(PROBLEMS.items()):
                print(f"{name:22s} {spec.summary}")
            return wb.EXIT_OK

        if args.command == "monitors":
            from .diagnostics import monitors as _mon
            from .physics import GasParams
            grid, cfg = build(args.problem, args.n)
            m = _mon(grid, GasParams(gamma=cfg.gamma))
            print(json.dumps({
                "max_div_b": m.max_div_b, "min_rho": m.min_rho,
                "min_p": m.min_p, "total_mass": m.total_mass,
                "total_energy": m.total_energy, "max_abs_bz": m.max_abs_bz,
            }, indent=2))
            return wb.EXIT_OK

        if args.command == "reference":
            outdir = Path(args.outdir) if args.outdir else wb.default_outdir(
                RunConfig(problem=args.problem, n=args.fine_n))
            wb.cached_reference(args.problem, args.fine_n, outdir)
            print(f"reference cached under {outdir / 'references'}")
            return wb.EXIT_OK

        if args.command == "run":
            cfg = _load_config(args)
            art = wb.cmd_run(cfg)
            print(f"completed {cfg.problem} n={cfg.n}: {art.summary.steps} steps, "
                  f"t={art.summary.t_end:.6g}")
            print(f"summary: {art.summary_path}")
            return wb.EXIT_OK

        if args.command == "convergence":
            n_list = [int(s) for s in args.n_list.split(",") if s.strip()]
            if not n_list:
                raise wb.ConfigError("empty --n-list")
            if args.n is None:
                args.n = n_list[0]
            cfg = _load_config(args)
            overrides = {k: v for k, v in _flag_overrides(args).items()
                         if k not in ("problem", "n", "ny", "outdir")}
            outdir = wb.default_outdir(cfg)
            rows = wb.convergence_study(cfg.problem, n_list, overrides or None,
                                        outdir=outdir, fine_n=args.fine_n)
            table = Path(args.table) if args.table else (
                outdir / f"{cfg.problem.replace('/', '_')}-convergence.csv")
            table.parent.mkdir(parents=True, exist_ok=True)
            wb.write_convergence_csv(rows, table)
            for r in rows:
                rate = "-" if r.rate is None else f"{r.rate:.4f}"
                print(f"N={r.n:6d}  delta={r.delta:.4e}  rate={rate}")
            print(f"table: {table}")
            return wb.EXIT_OK

        parser.error(f"unhandled command {args.command}")
    except wb.ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return wb.EXIT_CONFIG
    except PositivityError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return wb.EXIT_SOLVER
    except OSError as exc:
        print(f"io failure: {exc}", file=sys.stderr)
        return wb.EXIT_IO
    except (KeyError, ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return wb.EXIT_CONFIG
    return wb.EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
