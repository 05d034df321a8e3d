"""Explicit forward-Euler stepping with constrained-transport B updates.

A step computes every face flux from the time-n state only, applies the
conservative updates of (rho, m, E, B_z), assembles the corner electric
field and advances the staggered B_x, B_y by the Stokes-theorem update, then
rebuilds cell-centered B from the faces.  The discrete divergence of B is
preserved to round-off by construction.

Grids with ny == 1 and periodic y (the 1D benchmarks) take a specialized
single-row path that evaluates the same formulas with vanishing
y-derivatives; the two paths agree to rounding and are pinned together by
tests.
"""

from __future__ import annotations

import time as _time
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import _kernels as K
from .mesh import BoundaryCondition, Grid, apply_boundaries, max_div_b
from .physics import GasParams, NonPositiveDensityError, NonPositivePressureError
from .regularization import RegParams


@dataclass
class StepReport:
    """Per-step diagnostics."""

    dt: float
    max_div_b: float
    min_rho: float
    min_p: float
    wall_time: float


@dataclass
class RunSummary:
    """Aggregate of a run_until call."""

    steps: int
    t_end: float
    wall_time: float
    min_dt: float
    max_dt: float
    final_max_div_b: float
    final_min_rho: float
    final_min_p: float


class Workspace:
    """Reusable scratch arrays for one grid shape."""

    def __init__(self, grid: Grid):
        nyt, nxt = grid.rho.shape
        nx, ny = grid.nx, grid.ny
        self.shape = (nyt, nxt)
        self.ux = np.empty((nyt, nxt))
        self.uy = np.empty((nyt, nxt))
        self.uz = np.empty((nyt, nxt))
        self.p = np.empty((nyt, nxt))
        self.sx = np.empty((nyt, nxt))
        self.sy = np.empty((nyt, nxt))
        self.d = np.empty((K.NDERIVED, nyt, nxt))
        self.fx = np.empty((K.NFLUX, ny + 2, nx + 1))
        self.fy = np.empty((K.NFLUX, ny + 1, nx + 2))
        self.ez = np.empty((ny + 1, nx + 1))
        self.fx_row = np.empty((K.NFLUX, nx + 1))
        self.bfx_row = np.empty(nx + 2)
        self.ez_row = np.empty(nx + 1)

    @classmethod
    def for_grid(cls, grid: Grid, cached: "Workspace | None" = None) -> "Workspace":
        if cached is not None and cached.shape == grid.rho.shape:
            return cached
        return cls(grid)


def _prep(grid: Grid, gas: GasParams, ws: Workspace) -> None:
    K.prep(grid.rho, grid.mx, grid.my, grid.mz, grid.en,
           grid.bx, grid.by, grid.bz, gas.gamma,
           ws.ux, ws.uy, ws.uz, ws.p, ws.d, ws.sx, ws.sy)


def _use_row_path(grid: Grid, bc: BoundaryCondition) -> bool:
    return grid.ny == 1 and bc.bottom == "periodic"


def cfl_dt(grid: Grid, beta: float, gas: GasParams,
           ws: Workspace | None = None, bc: BoundaryCondition | None = None) -> float:
    """Courant time step beta * min_axis(h / max(|u_n| + c_f,n)).

    Maxima run over interior cells.  For single-row grids with periodic y
    there is no y-propagation, so only the x term limits the step.
    """
    if not 0.0 < beta <= 1.0:
        raise ValueError(f"Courant number must be in (0, 1], got {beta}")
    ws = Workspace.for_grid(grid, ws)
    _prep(grid, gas, ws)
    jsl, isl = grid.interior
    sx_max = float(np.max(ws.sx[jsl, isl]))
    if not np.isfinite(sx_max) or sx_max <= 0.0:
        raise RuntimeError(f"non-finite signal speed in CFL evaluation ({sx_max})")
    dt = grid.hx / sx_max
    row_only = grid.ny == 1 and (bc is None or _use_row_path(grid, bc))
    if not row_only:
        sy_max = float(np.max(ws.sy[jsl, isl]))
        if not np.isfinite(sy_max) or sy_max <= 0.0:
            raise RuntimeError(f"non-finite signal speed in CFL evaluation ({sy_max})")
        dt = min(dt, grid.hy / sy_max)
    return beta * dt


def validate_positivity(grid: Grid, gas: GasParams, step: int | None = None) -> tuple[float, float]:
    """(min rho, min p) over the interior; raises with location on violation."""
    jsl, isl = grid.interior
    rho = grid.rho[jsl, isl]
    jmin, imin = np.unravel_index(np.argmin(rho), rho.shape)
    min_rho = float(rho[jmin, imin])
    if not min_rho > 0.0:
        raise NonPositiveDensityError(min_rho, where=(int(imin), int(jmin)),
                                      time=grid.time, step=step)
    p = (gas.gamma - 1.0) * (
        grid.en[jsl, isl]
        - 0.5 * (grid.mx[jsl, isl] ** 2 + grid.my[jsl, isl] ** 2
                 + grid.mz[jsl, isl] ** 2) / rho
        - 0.5 * (grid.bx[jsl, isl] ** 2 + grid.by[jsl, isl] ** 2
                 + grid.bz[jsl, isl] ** 2)
    )
    jmin, imin = np.unravel_index(np.argmin(p), p.shape)
    min_p = float(p[jmin, imin])
    if not min_p > 0.0:
        raise NonPositivePressureError(min_p, where=(int(imin), int(jmin)),
                                       time=grid.time, step=step)
    return min_rho, min_p


def step(grid: Grid, gas: GasParams, reg: RegParams, beta: float,
         bc: BoundaryCondition, initial: Grid | None = None,
         dt_max: float | None = None, ws: Workspace | None = None,
         step_index: int | None = None) -> StepReport:
    """Advance the grid by one explicit step (in place).

    Fluxes are computed from the time-n state only; the order inside the
    step is fixed: boundaries, face fluxes, cell updates, corner E_z, face
    updates, cell-B reconstruction.
    """
    t0 = _time.perf_counter()
    ws = Workspace.for_grid(grid, ws)
    g, nx, ny = grid.ng, grid.nx, grid.ny

    apply_boundaries(grid, bc, initial)
    _prep(grid, gas, ws)

    jsl, isl = grid.interior
    sx_max = float(np.max(ws.sx[jsl, isl]))
    row_path = _use_row_path(grid, bc)
    if row_path:
        smax_rel = sx_max
        dt = grid.hx / sx_max if sx_max > 0 else np.inf
    else:
        sy_max = float(np.max(ws.sy[jsl, isl]))
        smax_rel = max(sx_max, sy_max)
        dt = min(grid.hx / sx_max if sx_max > 0 else np.inf,
                 grid.hy / sy_max if sy_max > 0 else np.inf)
    if not np.isfinite(smax_rel) or smax_rel <= 0.0:
        raise RuntimeError(f"non-finite signal speed at t={grid.time:.6g}")
    dt *= beta
    if dt_max is not None:
        dt = min(dt, dt_max)
    if not np.isfinite(dt) or dt <= 0.0:
        raise RuntimeError(f"time step underflow (dt={dt}) at t={grid.time:.6g}")

    h = 0.5 * (grid.hx + grid.hy)
    dtx = dt / grid.hx
    dty = dt / grid.hy

    if row_path:
        j = g
        K.flux_x_row(ws.ux, ws.uy, ws.uz, ws.p, grid.rho,
                     grid.bx, grid.by, grid.bz, ws.d,
                     g, nx, j, grid.hx, h, gas.gamma,
                     reg.alpha, reg.Sc, reg.Pr, gas.R, ws.fx_row)
        K.bxflux_cells_row(ws.ux, ws.uy, ws.uz, ws.p, grid.rho,
                           grid.bx, grid.by, grid.bz, ws.d,
                           g, nx, j, grid.hx, h, gas.gamma,
                           reg.alpha, reg.Sc, reg.Pr, ws.bfx_row)
        K.update_row(grid.rho, grid.mx, grid.my, grid.mz, grid.en, grid.bz,
                     grid.fby, ws.fx_row, ws.bfx_row, g, nx, j, dtx, ws.ez_row)
        grid.by[j, isl] = 0.5 * (grid.fby[j, isl] + grid.fby[j + 1, isl])
    else:
        K.flux_x(ws.ux, ws.uy, ws.uz, ws.p, grid.rho,
                 grid.bx, grid.by, grid.bz, ws.d,
                 g, nx, ny, grid.hx, grid.hy, h, gas.gamma,
                 reg.alpha, reg.Sc, reg.Pr, gas.R, ws.fx)
        K.flux_y(ws.ux, ws.uy, ws.uz, ws.p, grid.rho,
                 grid.bx, grid.by, grid.bz, ws.d,
                 g, nx, ny, grid.hx, grid.hy, h, gas.gamma,
                 reg.alpha, reg.Sc, reg.Pr, gas.R, ws.fy)
        K.update_cells(grid.rho, grid.mx, grid.my, grid.mz, grid.en, grid.bz,
                       ws.fx, ws.fy, g, nx, ny, dtx, dty)
        K.corner_ez(ws.fx, ws.fy, g, nx, ny, ws.ez)
        K.update_faces(grid.fbx, grid.fby, ws.ez, g, nx, ny, dtx, dty)
        grid.bx[jsl, isl] = 0.5 * (grid.fbx[jsl, g:g + nx] + grid.fbx[jsl, g + 1:g + nx + 1])
        grid.by[jsl, isl] = 0.5 * (grid.fby[g:g + ny, isl] + grid.fby[g + 1:g + ny + 1, isl])

    grid.time += dt
    min_rho, min_p = validate_positivity(grid, gas, step=step_index)
    return StepReport(dt=dt, max_div_b=max_div_b(grid),
                      min_rho=min_rho, min_p=min_p,
                      wall_time=_time.perf_counter() - t0)


Observer = Callable[[Grid, StepReport, int], None]


def run_until(grid: Grid, t_end: float, gas: GasParams, reg: RegParams,
              beta: float, bc: BoundaryCondition, initial: Grid | None = None,
              observers: Sequence[Observer] = (), max_steps: int = 10_000_000,
              ws: Workspace | None = None) -> RunSummary:
    """Step until the simulation time lands exactly on t_end.

    The final step is clipped so the end time is hit exactly.  Observers are
    invoked after every step.  Raises if t_end precedes the current time or
    the safety step limit is exhausted.
    """
    if t_end < grid.time:
        raise ValueError(f"t_end={t_end} precedes current time {grid.time}")
    ws = Workspace.for_grid(grid, ws)
    t0 = _time.perf_counter()
    n = 0
    min_dt = np.inf
    max_dt = 0.0
    last: StepReport | None = None
    # Relative slack absorbs accumulated round-off in the time sum.
    eps = 1e-12 * max(1.0, abs(t_end))
    while grid.time < t_end - eps:
        if n >= max_steps:
            raise RuntimeError(f"step limit {max_steps} exhausted at t={grid.time:.6g}")
        remaining = t_end - grid.time
        last = step(grid, gas, reg, beta, bc, initial=initial,
                    dt_max=remaining, ws=ws, step_index=n)
        if last.dt >= remaining:
            grid.time = t_end
        n += 1
        min_dt = min(min_dt, last.dt)
        max_dt = max(max_dt, last.dt)
        for obs in observers:
            obs(grid, last, n)
    if last is None:
        min_rho, min_p = validate_positivity(grid, gas)
        last = StepReport(dt=0.0, max_div_b=max_div_b(grid),
                          min_rho=min_rho, min_p=min_p, wall_time=0.0)
        min_dt = 0.0
    return RunSummary(steps=n, t_end=grid.time,
                      wall_time=_time.perf_counter() - t0,
                      min_dt=float(min_dt), max_dt=float(max_dt),
                      final_max_div_b=last.max_div_b,
                      final_min_rho=last.min_rho,
                      final_min_p=last.min_p)
