"""Relaxation-parameter closure and the tau-weighted dissipative fluxes.

Every artificial-dissipation ingredient lives here: the relaxation time
tau = alpha*h/c_f with its derived viscosity mu = tau*p*Sc and heat
coefficient k, the Delta-term bundle (tau-weighted time-derivative
surrogates evaluated from spatial derivatives of the ideal system), and the
full regularized flux set for a single face.

The functions in this module are the readable pointwise reference; the
stepping loop uses compiled kernels that are pinned to these references by
tests.

Face stencils: the normal derivative is the compact two-point difference
across the face; the transverse derivative averages the central differences
of the two adjacent cells; face values of primitives are arithmetic means of
the adjacent cells.  Derivatives of products (momentum-flux entries, u x B
entries, 1/rho, p/rho) difference the cell-wise product fields.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .mesh import Grid
from .physics import GasParams


@dataclass(frozen=True)
class RegParams:
    """Regularization coefficients: tau scale and Schmidt/Prandtl numbers.

    alpha is hard-bounded to (0, 1] by the run configuration (0 allowed here
    for the ideal-limit checks); usable range in practice is 0.1-0.5.
    """

    alpha: float
    Sc: float = 1.0
    Pr: float = 1.0

    def __post_init__(self):
        if self.alpha < 0.0:
            raise ValueError(f"alpha must be non-negative, got {self.alpha}")
        if not (self.Sc > 0.0 and self.Pr > 0.0):
            raise ValueError("Sc and Pr must be positive")


@dataclass
class DeltaTerms:
    """Tau-weighted surrogates at one face: Delta(1/rho), Delta u, Delta eps,
    Delta p, Delta B.  All components vanish on constant states and scale
    linearly with tau."""

    d_inv_rho: float
    du: np.ndarray
    d_eps: float
    dp: float
    dB: np.ndarray


@dataclass
class FaceFluxes:
    """Complete regularized flux bundle for one face.

    jm is the regularized normal mass flux; T the momentum flux column for
    this normal, j_m,k * u_n with the tau-corrected flux vector replacing
    rho*u in the advective part; Pi_n the dissipative-tensor column; F and
    Q_n the convective and dissipative energy fluxes; Pi_u the work term
    (Pi^n row dotted with u); induction[i] the flux of B_i along the normal
    (antisymmetric part included, so the normal component is zero).
    """

    jm: float
    T: np.ndarray
    Pi_n: np.ndarray
    F: float
    Q_n: float
    Pi_u: float
    induction: np.ndarray


def compute_tau(h: float, c_f: float, alpha: float, p: float = 0.0,
                sc: float = 1.0) -> tuple[float, float]:
    """Relaxation time tau = alpha*h/c_f and viscosity mu = tau*p*Sc.

    ``p`` is the pressure at the evaluation point (a face average in the
    scheme); ``h`` is the mean mesh step 0.5*(hx + hy).
    """
    if not c_f > 0.0:
        raise ValueError(f"fast speed must be positive, got {c_f}")
    if h <= 0.0:
        raise ValueError(f"mesh step must be positive, got {h}")
    tau = alpha * h / c_f
    return tau, tau * p * sc


def heat_coefficient(mu: float, gamma: float, R: float = 1.0, Pr: float = 1.0) -> float:
    """Artificial heat-transfer coefficient k = mu*gamma*R/((gamma-1)*Pr)."""
    return mu * gamma * R / ((gamma - 1.0) * Pr)


class _FaceStencil:
    """Discrete face operators over a 3x3 cell neighborhood.

    ``face`` is the global (ix, iy) index pair: for axis 0 the face sits
    between cells (ix-1, iy) and (ix, iy); for axis 1 between (ix, iy-1)
    and (ix, iy).  Grid arrays are indexed [j, i].
    """

    def __init__(self, grid: Grid, face: tuple[int, int], axis: int):
        ix, iy = face
        self.axis = axis
        self.hx = grid.hx
        self.hy = grid.hy
        if axis == 0:
            self.lo = (iy, ix - 1)
            self.hi = (iy, ix)
        elif axis == 1:
            self.lo = (iy - 1, ix)
            self.hi = (iy, ix)
        else:
            raise ValueError(f"axis must be 0 or 1, got {axis}")

    def avg(self, f: np.ndarray) -> float:
        return 0.5 * (f[self.lo] + f[self.hi])

    def d_normal(self, f: np.ndarray) -> float:
        h = self.hx if self.axis == 0 else self.hy
        return (f[self.hi] - f[self.lo]) / h

    def d_transverse(self, f: np.ndarray) -> float:
        if self.axis == 0:
            jl, il = self.lo
            jh, ih = self.hi
            return 0.5 * ((f[jl + 1, il] - f[jl - 1, il]) / (2.0 * self.hy)
                          + (f[jh + 1, ih] - f[jh - 1, ih]) / (2.0 * self.hy))
        jl, il = self.lo
        jh, ih = self.hi
        return 0.5 * ((f[jl, il + 1] - f[jl, il - 1]) / (2.0 * self.hx)
                      + (f[jh, ih + 1] - f[jh, ih - 1]) / (2.0 * self.hx))

    def dx(self, f: np.ndarray) -> float:
        return self.d_normal(f) if self.axis == 0 else self.d_transverse(f)

    def dy(self, f: np.ndarray) -> float:
        return self.d_transverse(f) if self.axis == 0 else self.d_normal(f)


def _cell_primitives(grid: Grid, gas: GasParams):
    """Primitive arrays over the whole grid (ghosts included), unchecked."""
    rho = grid.rho
    ux = grid.mx / rho
    uy = grid.my / rho
    uz = grid.mz / rho
    p = (gas.gamma - 1.0) * (
        grid.en
        - 0.5 * (grid.mx ** 2 + grid.my ** 2 + grid.mz ** 2) / rho
        - 0.5 * (grid.bx ** 2 + grid.by ** 2 + grid.bz ** 2)
    )
    return rho, ux, uy, uz, p


def delta_terms_at_face(grid: Grid, face: tuple[int, int], axis: int,
                        tau: float, gas: GasParams) -> DeltaTerms:
    """Evaluate the five Delta formulas at one face with the face stencils."""
    st = _FaceStencil(grid, face, axis)
    rho, ux, uy, uz, p = _cell_primitives(grid, gas)
    bx, by, bz = grid.bx, grid.by, grid.bz

    inv_rho = 1.0 / rho
    t_field = p * inv_rho                       # temperature p/rho (R = 1)
    eps = t_field / (gas.gamma - 1.0)
    b2h = 0.5 * (bx ** 2 + by ** 2 + bz ** 2)
    pxx, pxy, pxz = bx * bx, bx * by, bx * bz
    pyy, pyz = by * by, by * bz
    g12 = ux * by - uy * bx                     # u_i B_j - u_j B_i entries
    g21 = -g12
    g31 = uz * bx - ux * bz
    g32 = uz * by - uy * bz

    r_f = st.avg(rho)
    u1, u2 = st.avg(ux), st.avg(uy)
    p_f = st.avg(p)
    inv_f = 1.0 / r_f
    div_u = st.dx(ux) + st.dy(uy)

    d_inv_rho = -tau * (u1 * st.dx(inv_rho) + u2 * st.dy(inv_rho) - inv_f * div_u)
    du = np.array([
        -tau * (u1 * st.dx(ux) + u2 * st.dy(ux)
                + inv_f * (st.dx(p) + st.dx(b2h) - st.dx(pxx) - st.dy(pxy))),
        -tau * (u1 * st.dx(uy) + u2 * st.dy(uy)
                + inv_f * (st.dy(p) + st.dy(b2h) - st.dx(pxy) - st.dy(pyy))),
        -tau * (u1 * st.dx(uz) + u2 * st.dy(uz)
                + inv_f * (-st.dx(pxz) - st.dy(pyz))),
    ])
    d_eps = -tau * (u1 * st.dx(eps) + u2 * st.dy(eps) + (p_f * inv_f) * div_u)
    dp = -tau * (u1 * st.dx(p) + u2 * st.dy(p) + gas.gamma * p_f * div_u)
    dB = np.array([
        tau * st.dy(g12),
        tau * st.dx(g21),
        tau * (st.dx(g31) + st.dy(g32)),
    ])
    return DeltaTerms(d_inv_rho=d_inv_rho, du=du, d_eps=d_eps, dp=dp, dB=dB)


def regularized_face_fluxes(grid: Grid, face: tuple[int, int], axis: int,
                            params: RegParams, gas: GasParams,
                            h: float | None = None) -> FaceFluxes:
    """Full regularized flux bundle at one face.

    With alpha = 0 the bundle reduces componentwise to the ideal fluxes of
    the face-averaged state (tau, mu, k and every Delta term vanish).
    """
    st = _FaceStencil(grid, face, axis)
    rho, ux, uy, uz, p = _cell_primitives(grid, gas)
    bx, by, bz = grid.bx, grid.by, grid.bz
    if h is None:
        h = 0.5 * (grid.hx + grid.hy)

    # Face-averaged primitive state; derived quantities come from it.
    r_f = st.avg(rho)
    u_f = np.array([st.avg(ux), st.avg(uy), st.avg(uz)])
    p_f = st.avg(p)
    b_f = np.array([st.avg(bx), st.avg(by), st.avg(bz)])
    b2_f = float(b_f @ b_f)
    ub_f = float(u_f @ b_f)
    en_f = p_f / (gas.gamma - 1.0) + 0.5 * r_f * float(u_f @ u_f) + 0.5 * b2_f
    h_f = (en_f + p_f) / r_f

    a2 = gas.gamma * p_f / r_f
    bb2 = b2_f / r_f
    bn2 = b_f[axis] ** 2 / r_f
    ssum = a2 + bb2
    c_f = np.sqrt(0.5 * (ssum + np.sqrt(max(ssum * ssum - 4.0 * a2 * bn2, 0.0))))
    tau, mu = compute_tau(h, c_f, params.alpha, p=p_f, sc=params.Sc)
    k_heat = heat_coefficient(mu, gas.gamma, gas.R, params.Pr)

    d = delta_terms_at_face(grid, face, axis, tau, gas)

    # Momentum-flux tensor entries S_ij = rho u_i u_j + (p + B^2/2) delta_ij
    # - B_i B_j, differenced as cell fields for the full tau-weighted
    # correction vector w; every component of the regularized flux
    # j_m = rho (u - w) enters the momentum row.
    b2h = 0.5 * (bx ** 2 + by ** 2 + bz ** 2)
    s11 = rho * ux * ux + p + b2h - bx * bx
    s12 = rho * ux * uy - bx * by
    s22 = rho * uy * uy + p + b2h - by * by
    s13 = rho * ux * uz - bx * bz
    s23 = rho * uy * uz - by * bz

    w = (tau / r_f) * np.array([
        st.dx(s11) + st.dy(s12),
        st.dx(s12) + st.dy(s22),
        st.dx(s13) + st.dy(s23),
    ])
    jm_vec = r_f * (u_f - w)
    n = axis
    jm = jm_vec[n]
    u_n = u_f[n]
    b_n = b_f[n]

    delta = np.zeros(3)
    delta[n] = 1.0
    T = jm_vec * u_n + (p_f + 0.5 * b2_f) * delta - b_f * b_n

    # Viscous stress column Pi_{k,n} from the face velocity gradients.
    dxu = np.array([st.dx(ux), st.dx(uy), st.dx(uz)])
    dyu = np.array([st.dy(ux), st.dy(uy), st.dy(uz)])
    grad = np.zeros((3, 3))                     # grad[i, j] = du_i/dx_j
    grad[:, 0] = dxu
    grad[:, 1] = dyu
    div_u = grad[0, 0] + grad[1, 1]
    pi_visc = mu * (grad + grad.T - (2.0 / 3.0) * div_u * np.eye(3))

    db2 = 2.0 * float(b_f @ d.dB)
    pi_col = (pi_visc[:, n] - r_f * u_f * d.du[n] - d.dp * delta
              - 0.5 * db2 * delta + (b_f * d.dB[n] + d.dB * b_n))
    pi_row = (pi_visc[n, :] - r_f * u_n * d.du - d.dp * delta
              - 0.5 * db2 * delta + (b_n * d.dB + d.dB[n] * b_f))

    F = jm * (h_f + b2_f / (2.0 * r_f)) - b_n * ub_f

    t_field = p / rho
    q_n = -k_heat * st.d_normal(t_field)
    Q_n = (q_n + r_f * u_n * d.d_eps + r_f * u_n * (p_f + b2_f) * d.d_inv_rho
           + u_n * float(b_f @ d.dB) - b_n * float(b_f @ d.du))

    pi_u = float(pi_row @ u_f)

    # Induction flux of B_i along the normal, tau part included:
    # (u_n B_i - u_i B_n) + (du_n B_i - du_i B_n + u_n dB_i - u_i dB_n).
    induction = ((u_n * b_f - u_f * b_n)
                 + (d.du[n] * b_f - d.du * b_n + u_n * d.dB - u_f * d.dB[n]))

    return FaceFluxes(jm=float(jm), T=T, Pi_n=pi_col, F=float(F),
                      Q_n=float(Q_n), Pi_u=pi_u, induction=induction)
