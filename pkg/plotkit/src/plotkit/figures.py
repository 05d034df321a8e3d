"""Figure builders over solver snapshot CSVs.

Inputs are the workbench artifacts only: snapshot CSVs with the header
``x,y,rho,ux,uy,uz,p,Bx,By,Bz,E``, monitor time series
(``step,time,...``), and convergence tables (``N,delta,rate,...``).  Every
builder is deterministic: fixed figure geometry, fixed seeding for stream
tracing, fixed contour levels when requested.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

SNAPSHOT_HEADER = "x,y,rho,ux,uy,uz,p,Bx,By,Bz,E"
SNAPSHOT_COLUMNS = SNAPSHOT_HEADER.split(",")

PLOT_KINDS = ("profile", "contour", "fieldlines", "cut", "timeseries",
              "convergence")

# Pressure contours of the vortex benchmark are conventionally drawn on
# fixed levels 0.05 to 0.5 with step 0.015.
DEFAULT_PRESSURE_LEVELS = (0.05, 0.5, 0.015)

FIGSIZE = (6.0, 4.5)
DPI = 150


class PlotError(ValueError):
    """Bad figure specification or malformed input artifact."""


@dataclass
class FigureSpec:
    """One figure: kind, inputs, variable and presentation options."""

    kind: str
    inputs: list[str]
    output: str
    variable: str = "rho"
    cut_y: float | None = None
    levels: tuple[float, float, float] | None = None
    labels: list[str] = field(default_factory=list)
    title: str | None = None

    def __post_init__(self):
        if self.kind not in PLOT_KINDS:
            raise PlotError(f"unknown plot kind {self.kind!r}; "
                            f"known: {', '.join(PLOT_KINDS)}")
        if not self.inputs:
            raise PlotError("at least one input file is required")
        if self.kind == "cut" and self.cut_y is None:
            raise PlotError("cut plots need a cut_y value")


def load_snapshot(path: str | Path) -> dict[str, np.ndarray]:
    """Load a snapshot CSV into named columns (flat arrays)."""
    path = Path(path)
    if not path.exists():
        raise PlotError(f"missing input file {path}")
    with path.open() as f:
        header = f.readline().strip()
        if header != SNAPSHOT_HEADER:
            raise PlotError(f"{path}: unexpected snapshot header {header!r}")
        data = np.loadtxt(f, delimiter=",", ndmin=2)
    return {name: data[:, k] for k, name in enumerate(SNAPSHOT_COLUMNS)}


def load_table(path: str | Path) -> dict[str, np.ndarray]:
    """Load any headered CSV (monitors, convergence tables)."""
    path = Path(path)
    if not path.exists():
        raise PlotError(f"missing input file {path}")
    with path.open() as f:
        names = f.readline().strip().split(",")
        rows = []
        for line in f:
            rows.append([float(v) if v else np.nan for v in line.strip().split(",")])
    data = np.array(rows, dtype=float).reshape(-1, len(names))
    return {name: data[:, k] for k, name in enumerate(names)}


def reshape_2d(snap: dict[str, np.ndarray]) -> tuple[np.ndarray, np.ndarray, dict[str, np.ndarray]]:
    """Snapshot columns -> (x, y, fields) on the structured (ny, nx) grid."""
    x = np.unique(snap["x"])
    y = np.unique(snap["y"])
    nx, ny = len(x), len(y)
    if nx * ny != len(snap["x"]):
        raise PlotError("snapshot is not a full structured grid")
    fields = {name: snap[name].reshape(ny, nx)
              for name in SNAPSHOT_COLUMNS if name not in ("x", "y")}
    return x, y, fields


def _require_variable(variable: str) -> None:
    if variable not in SNAPSHOT_COLUMNS or variable in ("x", "y"):
        raise PlotError(f"unknown snapshot variable {variable!r}")


def _new_axes(title: str | None):
    fig, ax = plt.subplots(figsize=FIGSIZE, dpi=DPI)
    if title:
        ax.set_title(title)
    return fig, ax


def _save(fig, output: str | Path) -> Path:
    out = Path(output)
    out.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out, metadata={"Software": "qmhd-plotkit"})
    plt.close(fig)
    return out


def plot_profile(spec: FigureSpec) -> Path:
    """1D profiles: first input as dots, further inputs as lines."""
    _require_variable(spec.variable)
    fig, ax = _new_axes(spec.title)
    for k, path in enumerate(spec.inputs):
        snap = load_snapshot(path)
        label = spec.labels[k] if k < len(spec.labels) else Path(path).stem
        if k == 0:
            ax.plot(snap["x"], snap[spec.variable], ".", ms=3, label=label,
                    color="k")
        else:
            ax.plot(snap["x"], snap[spec.variable], "-", lw=1, label=label)
    ax.set_xlabel("x")
    ax.set_ylabel(spec.variable)
    ax.legend(loc="best", fontsize=8)
    return _save(fig, spec.output)


def _levels(spec: FigureSpec) -> np.ndarray | int:
    if spec.levels is not None:
        lo, hi, step = spec.levels
        return np.arange(lo, hi + 0.5 * step, step)
    if spec.variable == "p":
        lo, hi, step = DEFAULT_PRESSURE_LEVELS
        return np.arange(lo, hi + 0.5 * step, step)
    return 20


def plot_contour(spec: FigureSpec) -> Path:
    """Contour lines of one variable on the structured grid."""
    _require_variable(spec.variable)
    x, y, fields = reshape_2d(load_snapshot(spec.inputs[0]))
    fig, ax = _new_axes(spec.title)
    ax.contour(x, y, fields[spec.variable], levels=_levels(spec),
               colors="k", linewidths=0.5)
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_aspect("equal")
    return _save(fig, spec.output)


def plot_fieldlines(spec: FigureSpec) -> Path:
    """In-plane magnetic field lines via streamline tracing (fixed seeds)."""
    x, y, fields = reshape_2d(load_snapshot(spec.inputs[0]))
    fig, ax = _new_axes(spec.title)
    ax.streamplot(x, y, fields["Bx"], fields["By"], density=1.4,
                  color="k", linewidth=0.6, arrowsize=0.6)
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_xlim(x[0], x[-1])
    ax.set_ylim(y[0], y[-1])
    ax.set_aspect("equal")
    return _save(fig, spec.output)


def plot_cut(spec: FigureSpec) -> Path:
    """Variable along the grid row nearest to y = cut_y, one line per input."""
    _require_variable(spec.variable)
    fig, ax = _new_axes(spec.title)
    styles = ["--", "-", ":", "-."]
    for k, path in enumerate(spec.inputs):
        x, y, fields = reshape_2d(load_snapshot(path))
        j = int(np.argmin(np.abs(y - spec.cut_y)))
        label = spec.labels[k] if k < len(spec.labels) else Path(path).stem
        ax.plot(x, fields[spec.variable][j], styles[k % len(styles)],
                lw=1.0, color="k", label=f"{label} (y={y[j]:.4g})")
    ax.set_xlabel("x")
    ax.set_ylabel(spec.variable)
    ax.legend(loc="best", fontsize=8)
    return _save(fig, spec.output)


def plot_timeseries(spec: FigureSpec) -> Path:
    """Monitor quantity against time from a monitors CSV."""
    fig, ax = _new_axes(spec.title)
    for k, path in enumerate(spec.inputs):
        table = load_table(path)
        if spec.variable not in table:
            raise PlotError(f"{path}: no column {spec.variable!r}")
        label = spec.labels[k] if k < len(spec.labels) else Path(path).stem
        ax.plot(table["time"], table[spec.variable], lw=1.0, label=label)
    ax.set_xlabel("t")
    ax.set_ylabel(spec.variable)
    ax.legend(loc="best", fontsize=8)
    return _save(fig, spec.output)


def plot_convergence(spec: FigureSpec) -> Path:
    """log2-log2 error-versus-resolution plot with a first-order guide."""
    fig, ax = _new_axes(spec.title)
    for k, path in enumerate(spec.inputs):
        table = load_table(path)
        if "N" not in table or "delta" not in table:
            raise PlotError(f"{path}: not a convergence table")
        label = spec.labels[k] if k < len(spec.labels) else Path(path).stem
        ax.plot(np.log2(table["N"]), np.log2(table["delta"]), "o-", lw=1.0,
                label=label)
        if k == 0:
            n0, d0 = table["N"][0], table["delta"][0]
            guide = np.log2(d0) - (np.log2(table["N"]) - np.log2(n0))
            ax.plot(np.log2(table["N"]), guide, "k--", lw=0.8,
                    label="first order")
    ax.set_xlabel("log2 N")
    ax.set_ylabel("log2 error")
    ax.legend(loc="best", fontsize=8)
    return _save(fig, spec.output)


_BUILDERS = {
    "profile": plot_profile,
    "contour": plot_contour,
    "fieldlines": plot_fieldlines,
    "cut": plot_cut,
    "timeseries": plot_timeseries,
    "convergence": plot_convergence,
}


def plot(spec: FigureSpec) -> Path:
    """Dispatch a figure spec to its builder; returns the written path."""
    return _BUILDERS[spec.kind](spec)
