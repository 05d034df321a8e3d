"""Benchmark catalog: nine initial-condition builders plus the wave seeder.

Every builder returns a fully initialized grid (conserved cell fields, face
B, ghost cells filled analytically) together with run defaults.  All initial
face fields are discretely divergence-free: smooth rotational fields go
through a vector potential, piecewise data have the jump structure that
keeps the staggered divergence identically zero.

Magnetic values are stored in the rationalized convention (magnetic pressure
B^2/2); setups printed with 1/sqrt(4*pi) factors apply them here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .config import RunConfig
from .mesh import (Grid, cell_b_from_faces, init_faces_from_functions,
                   init_faces_from_potential, new_grid)

SQRT4PI = math.sqrt(4.0 * math.pi)

# Propagation angle of the oblique circularly polarized wave.
CP_THETA = math.atan(0.5)

# Domain of the oblique wave: the smallest 2:1 box that keeps sin(2*pi*xi)
# periodic for xi = x*cos(theta) + y*sin(theta): four wavelengths along x,
# one along y, with square cells when nx = 2*ny.
CP_LX = 2.0 * math.sqrt(5.0)
CP_LY = math.sqrt(5.0)


@dataclass(frozen=True)
class EigenMode:
    """Right eigenvector of the 1D ideal-MHD system in conserved ordering
    [rho, m_x, m_y, m_z, E, B_y, B_z], with its signed wave speed."""

    name: str
    r: tuple[float, ...]
    speed: float
    amplitude: float = 1.0e-6


# Left-running eigenmodes of the background rho=1, p=1/gamma, B=(1, sqrt(2),
# 0.5), gamma=5/3: fast/Alfven/slow speeds 2, 1, 0.5.
WAVE_MODES: dict[str, EigenMode] = {
    "fast": EigenMode("fast", (
        0.4472135954999580, -0.8944271909999160, 0.4216370213557840,
        0.1490711984999860, 2.012457825664615, 0.8432740427115680,
        0.2981423969999720), speed=2.0),
    "alfven": EigenMode("alfven", (
        0.0, 0.0, -0.3333333333333333, 0.9428090415820634, 0.0,
        -0.3333333333333333, 0.9428090415820634), speed=1.0),
    "slow": EigenMode("slow", (
        0.8944271909999159, -0.4472135954999579, -0.8432740427115680,
        -0.2981423969999720, 0.6708136850795449, -0.4216370213557841,
        -0.1490711984999860), speed=0.5),
}


@dataclass(frozen=True)
class ProblemSpec:
    name: str
    builder: Callable[[int, int | None], tuple[Grid, RunConfig]]
    summary: str


def _conserved_from_primitives(grid: Grid, gamma: float, rho, ux, uy, uz, p) -> None:
    """Fill conserved cell fields from primitive arrays (broadcastable)."""
    shape = grid.rho.shape
    rho = np.broadcast_to(rho, shape)
    grid.rho[:, :] = rho
    grid.mx[:, :] = rho * np.broadcast_to(ux, shape)
    grid.my[:, :] = rho * np.broadcast_to(uy, shape)
    grid.mz[:, :] = rho * np.broadcast_to(uz, shape)
    grid.en[:, :] = (np.broadcast_to(p, shape) / (gamma - 1.0)
                     + 0.5 * rho * (np.broadcast_to(ux, shape) ** 2
                                    + np.broadcast_to(uy, shape) ** 2
                                    + np.broadcast_to(uz, shape) ** 2)
                     + 0.5 * (grid.bx ** 2 + grid.by ** 2 + grid.bz ** 2))


def _riemann1d(n: int, left: tuple, right: tuple, bx: float, gamma: float) -> Grid:
    """1D Riemann data on [0, 1]: state tuples are (rho, ux, uy, uz, p, by, bz).

    Cells left of x = 0.5 (inclusive) take the left state.  B_x is uniform;
    the transverse components jump only along x, which keeps the staggered
    divergence identically zero.
    """
    hy = 1.0 / n
    grid = new_grid(n, 1, (0.0, 1.0, 0.0, hy))
    x = grid.xc_all()[None, :]
    rl, uxl, uyl, uzl, pl, byl, bzl = left
    rr, uxr, uyr, uzr, pr_, byr, bzr = right

    def pick(a, b):
        return np.where(x <= 0.5, a, b)

    def by_fn(xc, yc):
        return np.where(xc + 0.0 * yc <= 0.5, byl, byr)

    init_faces_from_functions(grid, lambda xf, yc: bx + 0.0 * xf * yc, by_fn)
    grid.bz[:, :] = pick(bzl, bzr)
    _conserved_from_primitives(grid, gamma, pick(rl, rr), pick(uxl, uxr),
                               pick(uyl, uyr), pick(uzl, uzr), pick(pl, pr_))
    return grid


def build_riemann_bw(n: int, ny: int | None = None) -> tuple[Grid, RunConfig]:
    """Shock tube with a flipped transverse field (B_x = 0.75, gamma = 2)."""
    grid = _riemann1d(n,
                      left=(1.0, 0.0, 0.0, 0.0, 1.0, 1.0, 0.0),
                      right=(0.125, 0.0, 0.0, 0.0, 0.1, -1.0, 0.0),
                      bx=0.75, gamma=2.0)
    cfg = RunConfig(problem="riemann-bw", n=n, ny=1, gamma=2.0, alpha=0.4,
                    beta=0.2, t_end=0.1, bc_x="fixed", bc_y="periodic")
    return grid, cfg


def build_riemann_all(n: int, ny: int | None = None) -> tuple[Grid, RunConfig]:
    """Shock tube whose solution carries every MHD discontinuity type."""
    s = 1.0 / SQRT4PI
    grid = _riemann1d(n,
                      left=(0.18405, 3.8964, 0.5361, 2.4866, 0.3641,
                            2.394 * s, 1.197 * s),
                      right=(0.1, -5.5, 0.0, 0.0, 0.1, 2.0 * s, 1.0 * s),
                      bx=4.0 * s, gamma=5.0 / 3.0)
    cfg = RunConfig(problem="riemann-all", n=n, ny=1, gamma=5.0 / 3.0,
                    alpha=0.5, beta=0.2, t_end=0.15,
                    bc_x="fixed", bc_y="periodic")
    return grid, cfg


def _build_wave(mode: EigenMode, n: int) -> tuple[Grid, RunConfig]:
    """Small-amplitude eigenmode on the uniform oblique-field background.

    The perturbation A*R*sin(2*pi*x) is applied directly to the conserved
    vector; the domain is one wavelength and the default end time one full
    domain crossing at the mode speed.  Default coefficients (alpha = 0.2,
    beta = 0.1, Pr = 0.25) are the dissipation calibration that reproduces
    the published drift-error tables for all three mode families.
    """
    gamma = 5.0 / 3.0
    hy = 1.0 / n
    grid = new_grid(n, 1, (0.0, 1.0, 0.0, hy))
    x = grid.xc_all()[None, :]
    s = np.sin(2.0 * np.pi * x)
    a = mode.amplitude
    r = mode.r

    by0 = math.sqrt(2.0)
    init_faces_from_functions(grid,
                              lambda xf, yc: 1.0 + 0.0 * xf * yc,
                              lambda xc, yf: by0 + a * r[5] * np.sin(2.0 * np.pi * xc) + 0.0 * yf)
    grid.bz[:, :] = 0.5 + a * r[6] * s

    p0 = 1.0 / gamma
    e0 = p0 / (gamma - 1.0) + 0.5 * (1.0 + 2.0 + 0.25)
    grid.rho[:, :] = 1.0 + a * r[0] * s
    grid.mx[:, :] = a * r[1] * s
    grid.my[:, :] = a * r[2] * s
    grid.mz[:, :] = a * r[3] * s
    grid.en[:, :] = e0 + a * r[4] * s
    cfg = RunConfig(problem=f"waves/{mode.name}", n=n, ny=1, gamma=gamma,
                    alpha=0.2, beta=0.1, pr=0.25,
                    t_end=1.0 / abs(mode.speed),
                    bc_x="periodic", bc_y="periodic")
    return grid, cfg


def build_alfven_decay(n: int, ny: int | None = None) -> tuple[Grid, RunConfig]:
    """Standing Alfven-wave dissipation probe on the unit square.

    A z-polarized velocity perturbation rides the diagonal mode
    (k_x, k_y) = (2*pi, 2*pi) on a uniform B = (1, 0, 0) background; the
    projected wave speed is 1/sqrt(2).  The z-field maximum then oscillates
    under an envelope whose decay tracks the scheme dissipation.
    """
    ny = ny or n
    gamma = 5.0 / 3.0
    grid = new_grid(n, ny, (0.0, 1.0, 0.0, 1.0))
    x = grid.xc_all()[None, :]
    y = grid.yc_all()[:, None]
    c_a = 1.0 / math.sqrt(2.0)
    uz = 0.1 * c_a * np.sin(2.0 * np.pi * (x + y))
    init_faces_from_functions(grid,
                              lambda xf, yc: 1.0 + 0.0 * xf * yc,
                              lambda xc, yf: 0.0 * xc * yf)
    _conserved_from_primitives(grid, gamma, 1.0, 0.0, 0.0, uz, 1.0)
    cfg = RunConfig(problem="alfven-decay", n=n, ny=ny, gamma=gamma,
                    alpha=0.1, beta=0.3, t_end=5.0,
                    bc_x="periodic", bc_y="periodic")
    return grid, cfg


def _build_cp_alfven(n: int, ny: int | None, u_par: float,
                     name: str) -> tuple[Grid, RunConfig]:
    """Circularly polarized Alfven wave along the mesh diagonal.

    Domain (2*sqrt(5), sqrt(5)) with nx = 2*ny keeps cells square and the
    unit-wavelength profile periodic.  The wave travels toward the origin at
    speed 1; u_par = 1 turns it into a standing pattern.
    """
    if ny is None:
        if n % 2:
            raise ValueError(f"{name} needs an even x-resolution, got {n}")
        ny = n // 2
    gamma = 5.0 / 3.0
    grid = new_grid(n, ny, (0.0, CP_LX, 0.0, CP_LY))
    ct, st = math.cos(CP_THETA), math.sin(CP_THETA)

    def az(xq, yq):
        xi = xq * ct + yq * st
        return -xq * st + yq * ct + (0.1 / (2.0 * np.pi)) * np.cos(2.0 * np.pi * xi)

    init_faces_from_potential(grid, az)
    x = grid.xc_all()[None, :]
    y = grid.yc_all()[:, None]
    xi = x * ct + y * st
    wperp = 0.1 * np.sin(2.0 * np.pi * xi)
    wz = 0.1 * np.cos(2.0 * np.pi * xi)
    ux = u_par * ct - wperp * st
    uy = u_par * st + wperp * ct
    grid.bz[:, :] = wz
    _conserved_from_primitives(grid, gamma, 1.0, ux, uy, wz, 1.0)
    cfg = RunConfig(problem=name, n=n, ny=ny, gamma=gamma, alpha=0.1,
                    beta=0.2, t_end=5.0, bc_x="periodic", bc_y="periodic")
    return grid, cfg


def build_blast(n: int, ny: int | None = None) -> tuple[Grid, RunConfig]:
    """Strong pressure blast (p = 1000 inside r = 0.05) in a B_x = 10 field."""
    ny = ny or n
    gamma = 1.4
    grid = new_grid(n, ny, (0.0, 1.0, 0.0, 1.0))
    x = grid.xc_all()[None, :]
    y = grid.yc_all()[:, None]
    rr = (x - 0.5) ** 2 + (y - 0.5) ** 2
    p = np.where(rr < 0.05 ** 2, 1000.0, 1.0)
    init_faces_from_functions(grid,
                              lambda xf, yc: 10.0 + 0.0 * xf * yc,
                              lambda xc, yf: 0.0 * xc * yf)
    _conserved_from_primitives(grid, gamma, 1.0, 0.0, 0.0, 0.0, p)
    cfg = RunConfig(problem="blast", n=n, ny=ny, gamma=gamma, alpha=0.4,
                    beta=0.1, t_end=0.02,
                    bc_x="zero-gradient", bc_y="zero-gradient")
    return grid, cfg


def build_riemann2d(n: int, ny: int | None = None) -> tuple[Grid, RunConfig]:
    """Four-quadrant Riemann problem with a uniform oblique field."""
    ny = ny or n
    gamma = 1.4
    grid = new_grid(n, ny, (-0.5, 0.5, -0.5, 0.5))
    x = grid.xc_all()[None, :]
    y = grid.yc_all()[:, None]
    xp = x > 0.0
    yp = y > 0.0
    rho = np.where(xp & yp, 1.0,
                   np.where(~xp & yp, 2.0, np.where(~xp & ~yp, 1.0, 3.0)))
    ux = np.where(xp & yp, 0.75,
                  np.where(~xp & yp, 0.75, np.where(~xp & ~yp, -0.75, -0.75)))
    uy = np.where(xp & yp, 0.5,
                  np.where(~xp & yp, 0.5, np.where(~xp & ~yp, 0.5, -0.5)))
    init_faces_from_functions(grid,
                              lambda xf, yc: 2.0 + 0.0 * xf * yc,
                              lambda xc, yf: 0.0 * xc * yf)
    grid.bz[:, :] = 1.0
    _conserved_from_primitives(grid, gamma, rho, ux, uy, 0.0, 1.0)
    cfg = RunConfig(problem="riemann2d", n=n, ny=ny, gamma=gamma, alpha=0.4,
                    beta=0.1, t_end=0.8,
                    bc_x="zero-gradient", bc_y="zero-gradient")
    return grid, cfg


def build_orszag_tang(n: int, ny: int | None = None) -> tuple[Grid, RunConfig]:
    """Orszag-Tang vortex on the periodic unit square (B0 = 1/sqrt(4*pi))."""
    ny = ny or n
    gamma = 5.0 / 3.0
    grid = new_grid(n, ny, (0.0, 1.0, 0.0, 1.0))
    b0 = 1.0 / SQRT4PI
    x = grid.xc_all()[None, :]
    y = grid.yc_all()[:, None]

    def az(xq, yq):
        return b0 * (np.cos(2.0 * np.pi * yq) / (2.0 * np.pi)
                     + np.cos(4.0 * np.pi * xq) / (4.0 * np.pi))

    init_faces_from_potential(grid, az)
    rho = 25.0 / (36.0 * np.pi)
    p = 5.0 / (12.0 * np.pi)
    ux = -np.sin(2.0 * np.pi * y) + 0.0 * x
    uy = np.sin(2.0 * np.pi * x) + 0.0 * y
    _conserved_from_primitives(grid, gamma, rho, ux, uy, 0.0, p)
    cfg = RunConfig(problem="orszag-tang", n=n, ny=ny, gamma=gamma, alpha=0.3,
                    beta=0.2, t_end=0.5, bc_x="periodic", bc_y="periodic")
    return grid, cfg


def build_shock_cloud(n: int, ny: int | None = None) -> tuple[Grid, RunConfig]:
    """Fast shock sweeping a dense spherical cloud; split plane x = 0.05."""
    ny = ny or n
    gamma = 5.0 / 3.0
    grid = new_grid(n, ny, (0.0, 1.0, 0.0, 1.0))
    x = grid.xc_all()[None, :]
    y = grid.yc_all()[:, None]
    lft = x <= 0.05

    def pick(a, b):
        return np.where(lft, a, b)

    rho = pick(3.86859, 1.0)
    rho = np.where(((x - 0.3) ** 2 + (y - 0.5) ** 2 < 0.15 ** 2) & ~lft, 10.0, rho)
    ux = pick(11.2536, 0.0)
    p = pick(167.345, 1.0)

    def by_fn(xc, yf):
        return np.where(xc + 0.0 * yf <= 0.05, 2.1826182, 0.56418958)

    init_faces_from_functions(grid, lambda xf, yc: 0.0 * xf * yc, by_fn)
    grid.bz[:, :] = pick(-2.1826182, 0.56418958)
    _conserved_from_primitives(grid, gamma, rho, ux, 0.0, 0.0, p)
    cfg = RunConfig(problem="shock-cloud", n=n, ny=ny, gamma=gamma, alpha=0.4,
                    beta=0.1, t_end=0.06,
                    bc_x="zero-gradient", bc_y="zero-gradient")
    return grid, cfg


PROBLEMS: dict[str, ProblemSpec] = {
    "riemann-bw": ProblemSpec("riemann-bw", build_riemann_bw,
                              "1D shock tube, flipped transverse B"),
    "riemann-all": ProblemSpec("riemann-all", build_riemann_all,
                               "1D shock tube with all discontinuity types"),
    "waves/fast": ProblemSpec(
        "waves/fast", lambda n, ny=None: _build_wave(WAVE_MODES["fast"], n),
        "fast magnetosonic eigenmode, one domain crossing"),
    "waves/alfven": ProblemSpec(
        "waves/alfven", lambda n, ny=None: _build_wave(WAVE_MODES["alfven"], n),
        "Alfven eigenmode, one domain crossing"),
    "waves/slow": ProblemSpec(
        "waves/slow", lambda n, ny=None: _build_wave(WAVE_MODES["slow"], n),
        "slow magnetosonic eigenmode, one domain crossing"),
    "alfven-decay": ProblemSpec("alfven-decay", build_alfven_decay,
                                "standing Alfven wave dissipation probe"),
    "cp-alfven": ProblemSpec(
        "cp-alfven", lambda n, ny=None: _build_cp_alfven(n, ny, 0.0, "cp-alfven"),
        "oblique circularly polarized Alfven wave (traveling)"),
    "cp-alfven-standing": ProblemSpec(
        "cp-alfven-standing",
        lambda n, ny=None: _build_cp_alfven(n, ny, 1.0, "cp-alfven-standing"),
        "oblique circularly polarized Alfven wave (standing)"),
    "blast": ProblemSpec("blast", build_blast,
                         "strong pressure blast in a magnetized medium"),
    "riemann2d": ProblemSpec("riemann2d", build_riemann2d,
                             "four-state 2D Riemann problem"),
    "orszag-tang": ProblemSpec("orszag-tang", build_orszag_tang,
                               "Orszag-Tang vortex"),
    "shock-cloud": ProblemSpec("shock-cloud", build_shock_cloud,
                               "shock-cloud interaction"),
}


def build(name: str, n: int, overrides: dict | None = None,
          ny: int | None = None) -> tuple[Grid, RunConfig]:
    """Build a catalog problem at resolution n, applying config overrides."""
    if name not in PROBLEMS:
        raise KeyError(f"unknown problem {name!r}; known: {sorted(PROBLEMS)}")
    grid, cfg = PROBLEMS[name].builder(n, ny)
    cfg = cfg.with_overrides(overrides).validate()
    return grid, cfg


def exact_reference(name: str, fine_n: int = 20000,
                    overrides: dict | None = None) -> dict[str, np.ndarray]:
    """Fine-grid self-reference profile for a 1D Riemann problem.

    Runs the solver itself at ``fine_n`` cells to the problem's end time and
    returns the primitive profiles used as the exact solution in the error
    metric.  Expensive; the workbench caches results on disk.
    """
    if name not in ("riemann-bw", "riemann-all"):
        raise ValueError(f"{name!r} has no fine-grid self-reference protocol")
    from .diagnostics import snapshot_profile
    from .mesh import BoundaryCondition
    from .physics import GasParams
    from .regularization import RegParams
    from .stepper import run_until

    grid, cfg = build(name, fine_n, overrides)
    gas = GasParams(gamma=cfg.gamma, Pr=cfg.pr, Sc=cfg.sc)
    reg = RegParams(alpha=cfg.alpha, Sc=cfg.sc, Pr=cfg.pr)
    bc = BoundaryCondition.from_axis_kinds(cfg.bc_x, cfg.bc_y)
    initial = grid.copy() if bc.needs_initial else None
    run_until(grid, cfg.t_end, gas, reg, cfg.beta, bc, initial=initial)
    return snapshot_profile(grid, gas)
