"""Run orchestration and persistence: configs, snapshots, tables, caching.

Config files are flat ``key = value`` text with optional ``[section]``
headers (sections only group lines; keys stay global and unknown keys are
rejected).  Precedence is fixed: problem defaults < file < CLI flags.

Artifacts:

* snapshot CSV: header ``x,y,rho,ux,uy,uz,p,Bx,By,Bz,E``, row-major by j
  then i, 17 significant digits;
* legacy ASCII VTK STRUCTURED_POINTS with one CELL_DATA scalar per field;
* monitors CSV time series and a JSON run summary that echoes the full
  config (sufficient to relaunch the identical run);
* convergence tables as CSV with full-precision and display columns.

Fine-grid self-references are content-addressed by the parameters that
affect them and cached under ``<outdir>/references``.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
import time as _time
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Iterable

import numpy as np

from .config import RunConfig
from .diagnostics import (convergence_rates, cp_alfven_error, monitors,
                          riemann_error, snapshot_profile, upsample_profile,
                          wave_error)
from .mesh import BoundaryCondition, Grid
from .physics import GasParams
from .problems import CP_THETA, PROBLEMS, build
from .regularization import RegParams
from .stepper import RunSummary, Workspace, run_until

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SOLVER = 3
EXIT_IO = 4

CSV_HEADER = "x,y,rho,ux,uy,uz,p,Bx,By,Bz,E"

_BOOLEANS = {"true": True, "false": False, "yes": True, "no": False}

# Keys accepted in config files/flags, with parsers.
_KEY_PARSERS: dict[str, Callable[[str], Any]] = {
    "problem": str,
    "n": int,
    "ny": int,
    "gamma": float,
    "alpha": float,
    "beta": float,
    "sc": float,
    "pr": float,
    "t_end": float,
    "bc_x": str,
    "bc_y": str,
    "outdir": str,
    "cadence_steps": int,
    "cadence_time": float,
    "formats": lambda s: tuple(x.strip() for x in s.split(",") if x.strip()),
    "workers": int,
}


class ConfigError(ValueError):
    """Malformed or out-of-range run configuration."""


def parse_config_text(text: str) -> dict[str, Any]:
    """Parse the flat key-value grammar into an override dict (strict keys)."""
    out: dict[str, Any] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            continue  # sections group lines visually; keys are global
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, val = line.partition("=")
        key = key.strip().lower().replace("-", "_")
        val = val.strip()
        if key not in _KEY_PARSERS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        try:
            out[key] = _KEY_PARSERS[key](val)
        except ConfigError:
            raise
        except Exception as exc:
            raise ConfigError(f"line {lineno}: bad value for {key}: {val!r} ({exc})")
    return out


def parse_config(text: str, flag_overrides: dict[str, Any] | None = None) -> RunConfig:
    """File text + flag overrides -> validated RunConfig.

    Problem defaults are applied first, then file values, then flags.
    """
    file_kv = parse_config_text(text)
    merged = dict(file_kv)
    if flag_overrides:
        for k, v in flag_overrides.items():
            if v is None:
                continue
            if k not in _KEY_PARSERS:
                raise ConfigError(f"unknown config key {k!r}")
            merged[k] = v
    if "problem" not in merged:
        raise ConfigError("config must name a problem")
    if "n" not in merged:
        raise ConfigError("config must set the resolution n")
    name = merged.pop("problem")
    n = merged.pop("n")
    ny = merged.pop("ny", None)
    try:
        _, cfg = build(name, n, merged, ny=ny)
    except (KeyError, ValueError) as exc:
        raise ConfigError(str(exc))
    return cfg


def default_outdir(cfg: RunConfig) -> Path:
    if cfg.outdir:
        return Path(cfg.outdir)
    return Path(os.environ.get("QMHD_OUT", "qmhd-out"))


def solver_objects(cfg: RunConfig) -> tuple[Grid, GasParams, RegParams, BoundaryCondition, Grid | None]:
    """Instantiate the grid and parameter bundles for a validated config."""
    grid, _ = build(cfg.problem, cfg.n, ny=cfg.ny)
    gas = GasParams(gamma=cfg.gamma, Pr=cfg.pr, Sc=cfg.sc)
    reg = RegParams(alpha=cfg.alpha, Sc=cfg.sc, Pr=cfg.pr)
    bc = BoundaryCondition.from_axis_kinds(cfg.bc_x, cfg.bc_y)
    initial = grid.copy() if bc.needs_initial else None
    return grid, gas, reg, bc, initial


# ------------------------------------------------------------------
# Snapshot writers
# ------------------------------------------------------------------

def write_snapshot_csv(grid: Grid, gas: GasParams, path: str | Path) -> Path:
    """Cell-centered snapshot: one row per interior cell, j outer, i inner."""
    path = Path(path)
    jsl, isl = grid.interior
    rho = grid.rho[jsl, isl]
    ux = grid.mx[jsl, isl] / rho
    uy = grid.my[jsl, isl] / rho
    uz = grid.mz[jsl, isl] / rho
    bx = grid.bx[jsl, isl]
    by = grid.by[jsl, isl]
    bz = grid.bz[jsl, isl]
    en = grid.en[jsl, isl]
    p = (gas.gamma - 1.0) * (en - 0.5 * rho * (ux ** 2 + uy ** 2 + uz ** 2)
                             - 0.5 * (bx ** 2 + by ** 2 + bz ** 2))
    x = np.broadcast_to(grid.xc()[None, :], rho.shape)
    y = np.broadcast_to(grid.yc()[:, None], rho.shape)
    cols = [x, y, rho, ux, uy, uz, p, bx, by, bz, en]
    data = np.column_stack([c.ravel(order="C") for c in cols])
    with path.open("w") as f:
        f.write(CSV_HEADER + "\n")
        np.savetxt(f, data, fmt="%.17g", delimiter=",")
    return path


def read_snapshot_csv(path: str | Path) -> dict[str, np.ndarray]:
    """Read a snapshot CSV back into flat column arrays."""
    path = Path(path)
    with path.open() as f:
        header = f.readline().strip()
        if header != CSV_HEADER:
            raise ValueError(f"{path}: unexpected header {header!r}")
        data = np.loadtxt(f, delimiter=",", ndmin=2)
    names = ["x", "y", "rho", "ux", "uy", "uz", "p", "bx", "by", "bz", "en"]
    return {name: data[:, k] for k, name in enumerate(names)}


def write_snapshot_vtk(grid: Grid, gas: GasParams, path: str | Path,
                       title: str = "qmhd snapshot") -> Path:
    """Legacy ASCII STRUCTURED_POINTS file with CELL_DATA scalars."""
    path = Path(path)
    jsl, isl = grid.interior
    rho = grid.rho[jsl, isl]
    ux = grid.mx[jsl, isl] / rho
    uy = grid.my[jsl, isl] / rho
    uz = grid.mz[jsl, isl] / rho
    bx = grid.bx[jsl, isl]
    by = grid.by[jsl, isl]
    bz = grid.bz[jsl, isl]
    en = grid.en[jsl, isl]
    p = (gas.gamma - 1.0) * (en - 0.5 * rho * (ux ** 2 + uy ** 2 + uz ** 2)
                             - 0.5 * (bx ** 2 + by ** 2 + bz ** 2))
    fields = [("rho", rho), ("ux", ux), ("uy", uy), ("uz", uz), ("p", p),
              ("Bx", bx), ("By", by), ("Bz", bz), ("E", en)]
    with path.open("w") as f:
        f.write("# vtk DataFile Version 3.0\n")
        f.write(title + "\n")
        f.write("ASCII\n")
        f.write("DATASET STRUCTURED_POINTS\n")
        f.write(f"DIMENSIONS {grid.nx + 1} {grid.ny + 1} 1\n")
        f.write(f"ORIGIN {grid.x0:.17g} {grid.y0:.17g} 0\n")
        f.write(f"SPACING {grid.hx:.17g} {grid.hy:.17g} 1\n")
        f.write(f"CELL_DATA {grid.nx * grid.ny}\n")
        for name, arr in fields:
            f.write(f"SCALARS {name} double 1\n")
            f.write("LOOKUP_TABLE default\n")
            np.savetxt(f, arr.ravel(order="C")[:, None], fmt="%.17g")
    return path


# ------------------------------------------------------------------
# Reference caching
# ------------------------------------------------------------------

def _reference_key(name: str, fine_n: int, cfg: RunConfig) -> str:
    payload = json.dumps({
        "problem": name, "n": fine_n, "gamma": cfg.gamma, "alpha": cfg.alpha,
        "beta": cfg.beta, "sc": cfg.sc, "pr": cfg.pr, "t_end": cfg.t_end,
        "bc_x": cfg.bc_x, "bc_y": cfg.bc_y,
    }, sort_keys=True)
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


def cached_reference(name: str, fine_n: int, outdir: Path,
                     overrides: dict[str, Any] | None = None) -> dict[str, np.ndarray]:
    """Fine-grid self-reference, content-addressed and cached on disk."""
    from .problems import exact_reference
    _, cfg = build(name, fine_n, overrides)
    key = _reference_key(name, fine_n, cfg)
    cache_dir = outdir / "references"
    cache_dir.mkdir(parents=True, exist_ok=True)
    cache_file = cache_dir / f"{name.replace('/', '_')}-{fine_n}-{key}.npz"
    if cache_file.exists():
        with np.load(cache_file) as z:
            return {k: z[k] for k in z.files}
    ref = exact_reference(name, fine_n, overrides)
    np.savez_compressed(cache_file, **ref)
    return ref


# ------------------------------------------------------------------
# Run command
# ------------------------------------------------------------------

@dataclass
class RunArtifacts:
    summary_path: Path
    monitor_path: Path
    snapshot_paths: list[Path]
    summary: RunSummary


def cmd_run(cfg: RunConfig, outdir: Path | None = None,
            tag: str | None = None) -> RunArtifacts:
    """Execute a configured run, writing snapshots, monitors and a summary."""
    cfg.validate()
    if cfg.workers is not None:
        import numba
        numba.set_num_threads(cfg.workers)
    outdir = outdir or default_outdir(cfg)
    outdir.mkdir(parents=True, exist_ok=True)
    tag = tag or cfg.problem.replace("/", "_") + f"-{cfg.n}"
    grid, gas, reg, bc, initial = solver_objects(cfg)

    snapshot_paths: list[Path] = []
    monitor_rows: list[tuple] = []
    state = {"next_time": cfg.cadence_time or math.inf, "count": 0}

    def write_snap(g: Grid, label: str) -> None:
        for fmt in cfg.formats:
            p = outdir / f"{tag}-{label}.{fmt}"
            if fmt == "csv":
                write_snapshot_csv(g, gas, p)
            else:
                write_snapshot_vtk(g, gas, p)
            snapshot_paths.append(p)

    def observer(g: Grid, rep, istep: int) -> None:
        jsl, isl = g.interior
        max_bz = float(np.max(np.abs(g.bz[jsl, isl])))
        monitor_rows.append((istep, g.time, rep.dt, rep.max_div_b,
                             rep.min_rho, rep.min_p, max_bz))
        due = False
        if cfg.cadence_steps and istep % cfg.cadence_steps == 0:
            due = True
        if cfg.cadence_time and g.time >= state["next_time"]:
            due = True
            state["next_time"] += cfg.cadence_time
        if due:
            state["count"] += 1
            write_snap(g, f"t{g.time:.6f}")

    t0 = _time.perf_counter()
    summary = run_until(grid, cfg.t_end, gas, reg, cfg.beta, bc,
                        initial=initial, observers=(observer,))
    wall = _time.perf_counter() - t0
    write_snap(grid, "final")

    monitor_path = outdir / f"{tag}-monitors.csv"
    with monitor_path.open("w") as f:
        f.write("step,time,dt,max_div_b,min_rho,min_p,max_abs_bz\n")
        for row in monitor_rows:
            f.write(",".join(f"{v:.17g}" if isinstance(v, float) else str(v)
                             for v in row) + "\n")

    mon = monitors(grid, gas)
    summary_path = outdir / f"{tag}-summary.json"
    payload = {
        "config": cfg.to_dict(),
        "steps": summary.steps,
        "wall_time": wall,
        "t_end": grid.time,
        "final_monitors": {
            "max_div_b": mon.max_div_b,
            "min_rho": mon.min_rho,
            "min_p": mon.min_p,
            "total_mass": mon.total_mass,
            "total_momentum": list(mon.total_momentum),
            "total_energy": mon.total_energy,
            "max_abs_bz": mon.max_abs_bz,
        },
    }
    summary_path.write_text(json.dumps(payload, indent=2))
    return RunArtifacts(summary_path=summary_path, monitor_path=monitor_path,
                        snapshot_paths=snapshot_paths, summary=summary)


# ------------------------------------------------------------------
# Convergence studies
# ------------------------------------------------------------------

@dataclass
class ConvergenceRow:
    n: int
    delta: float
    rate: float | None


def convergence_study(problem: str, n_list: Iterable[int],
                      overrides: dict[str, Any] | None = None,
                      outdir: Path | None = None,
                      fine_n: int = 20000) -> list[ConvergenceRow]:
    """Run a problem across resolutions and compute its table metric.

    Riemann problems compare against the cached fine self-reference; wave
    problems measure the eigenmode drift after one crossing; the oblique
    wave problems compare against the analytic profile at t_end.
    """
    if problem not in PROBLEMS:
        raise ConfigError(f"unknown problem {problem!r}")
    outdir = outdir or Path(os.environ.get("QMHD_OUT", "qmhd-out"))
    is_riemann = problem.startswith("riemann-")
    is_wave = problem.startswith("waves/")
    is_cp = problem.startswith("cp-alfven")
    if not (is_riemann or is_wave or is_cp):
        raise ConfigError(f"{problem!r} has no convergence-table protocol")

    ref = cached_reference(problem, fine_n, outdir, overrides) if is_riemann else None

    deltas: list[float] = []
    rows: list[ConvergenceRow] = []
    for n in n_list:
        grid, cfg = build(problem, n, overrides)
        gas = GasParams(gamma=cfg.gamma, Pr=cfg.pr, Sc=cfg.sc)
        reg = RegParams(alpha=cfg.alpha, Sc=cfg.sc, Pr=cfg.pr)
        bc = BoundaryCondition.from_axis_kinds(cfg.bc_x, cfg.bc_y)
        initial = grid.copy() if bc.needs_initial else None
        g0 = grid.copy() if is_wave else None
        run_until(grid, cfg.t_end, gas, reg, cfg.beta, bc, initial=initial)
        if is_riemann:
            num = snapshot_profile(grid, gas)
            num_fine = upsample_profile(num, ref["x"], grid.hx, grid.x0)
            delta = riemann_error(num_fine, ref).delta
        elif is_wave:
            delta = wave_error(grid, g0)
        else:
            delta = cp_alfven_error(grid, gas, CP_THETA).delta
        deltas.append(delta)
        rows.append(ConvergenceRow(n=n, delta=delta, rate=None))
    for row, rate in zip(rows, convergence_rates(deltas)):
        row.rate = rate
    return rows


def write_convergence_csv(rows: list[ConvergenceRow], path: str | Path) -> Path:
    """Table CSV: full-precision columns plus rounded display columns."""
    path = Path(path)
    with Path(path).open("w") as f:
        f.write("N,delta,rate,delta_display,rate_display\n")
        for r in rows:
            rate = "" if r.rate is None else f"{r.rate:.17g}"
            rate_disp = "" if r.rate is None else f"{r.rate:.4f}"
            f.write(f"{r.n},{r.delta:.17g},{rate},{r.delta:.4e},{rate_disp}\n")
    return path
