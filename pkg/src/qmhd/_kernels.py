"""Compiled stepping kernels.

Implementation notes
--------------------
Cell arrays are indexed ``[j, i]`` (rows contiguous in x).  Each step:

1. ``prep``: per-cell primitives, the derived product fields that face
   stencils difference, and the per-cell CFL speeds.
2. ``flux_x`` / ``flux_y``: one pass per face orientation producing the
   stacked flux bundle (mass, three momentum components with the
   dissipative tensor folded in, total energy, and the induction fluxes).
3. ``update_cells``: conservative update of rho, momentum, energy and the
   cell-centered B_z.
4. ``corner_ez`` + ``update_faces``: constrained-transport update of the
   staggered B_x, B_y from the corner electric field.

Face stencils: normal derivative = two-point difference across the face;
transverse derivative = average of the central differences of the two
adjacent cells; face values = arithmetic means.  The relaxation time is
face-local, tau = alpha*h/c_f with h = (hx + hy)/2 and c_f the fast speed
along the face normal evaluated from the face-averaged state.

A specialized single-row path serves ny == 1 grids (all rows identical
under periodic y): it evaluates the same formulas with vanishing
y-derivatives and skips the redundant rows, which makes the 20000-cell
reference runs affordable.

All loops write disjoint cells, so results are bitwise independent of the
thread count.
"""

from __future__ import annotations

import numpy as np
from numba import njit, prange

# Derived per-cell fields differenced by the face stencils.
INV = 0    # 1/rho
TF = 1     # temperature p/rho (R = 1); eps = TF/(gamma-1)
B2H = 2    # |B|^2 / 2
PXX = 3    # B_x B_x
PXY = 4    # B_x B_y
PXZ = 5    # B_x B_z
PYY = 6    # B_y B_y
PYZ = 7    # B_y B_z
G12 = 8    # u_x B_y - u_y B_x   (G21 = -G12)
G31 = 9    # u_z B_x - u_x B_z
G32 = 10   # u_z B_y - u_y B_z
S11 = 11   # rho u_x u_x + p + |B|^2/2 - B_x B_x
S12 = 12   # rho u_x u_y - B_x B_y
S22 = 13   # rho u_y u_y + p + |B|^2/2 - B_y B_y
S13 = 14   # rho u_x u_z - B_x B_z
S23 = 15   # rho u_y u_z - B_y B_z
NDERIVED = 16

# Stacked flux-bundle slots (x- and y-face arrays share the layout; slot 5
# holds the induction flux of the transverse in-plane B component).
FJM = 0
FM1 = 1
FM2 = 2
FM3 = 3
FEN = 4
FBT = 5
FBZ = 6
NFLUX = 7


@njit(cache=True, parallel=True, error_model="numpy")
def prep(rho, mx, my, mz, en, bx, by, bz, gamma,
         ux, uy, uz, p, d, sx, sy):
    """Primitives, derived product fields and CFL speeds for every cell."""
    nyt, nxt = rho.shape
    gm1 = gamma - 1.0
    for j in prange(nyt):
        for i in range(nxt):
            r = rho[j, i]
            inv = 1.0 / r
            u1 = mx[j, i] * inv
            u2 = my[j, i] * inv
            u3 = mz[j, i] * inv
            b1 = bx[j, i]
            b2 = by[j, i]
            b3 = bz[j, i]
            b2h = 0.5 * (b1 * b1 + b2 * b2 + b3 * b3)
            pp = gm1 * (en[j, i] - 0.5 * r * (u1 * u1 + u2 * u2 + u3 * u3) - b2h)
            ux[j, i] = u1
            uy[j, i] = u2
            uz[j, i] = u3
            p[j, i] = pp
            d[INV, j, i] = inv
            d[TF, j, i] = pp * inv
            d[B2H, j, i] = b2h
            d[PXX, j, i] = b1 * b1
            d[PXY, j, i] = b1 * b2
            d[PXZ, j, i] = b1 * b3
            d[PYY, j, i] = b2 * b2
            d[PYZ, j, i] = b2 * b3
            d[G12, j, i] = u1 * b2 - u2 * b1
            d[G31, j, i] = u3 * b1 - u1 * b3
            d[G32, j, i] = u3 * b2 - u2 * b3
            ruu = r * u1
            d[S11, j, i] = ruu * u1 + pp + b2h - b1 * b1
            d[S12, j, i] = ruu * u2 - b1 * b2
            d[S22, j, i] = r * u2 * u2 + pp + b2h - b2 * b2
            d[S13, j, i] = ruu * u3 - b1 * b3
            d[S23, j, i] = r * u2 * u3 - b2 * b3

            a2 = gamma * pp * inv
            bb2 = 2.0 * b2h * inv
            ss = a2 + bb2
            discx = ss * ss - 4.0 * a2 * b1 * b1 * inv
            if discx < 0.0:
                discx = 0.0
            cf2x = 0.5 * (ss + np.sqrt(discx))
            if cf2x < 0.0:
                cf2x = 0.0
            discy = ss * ss - 4.0 * a2 * b2 * b2 * inv
            if discy < 0.0:
                discy = 0.0
            cf2y = 0.5 * (ss + np.sqrt(discy))
            if cf2y < 0.0:
                cf2y = 0.0
            sx[j, i] = np.abs(u1) + np.sqrt(cf2x)
            sy[j, i] = np.abs(u2) + np.sqrt(cf2y)


@njit(cache=True, parallel=True, error_model="numpy")
def flux_x(ux, uy, uz, p, rho, bx, by, bz, d,
           g, nx, ny, hx, hy, h, gamma, alpha, sc, pr, rgas, fx):
    """Flux bundle on x-faces fi in [g, g+nx] for rows j in [g-1, g+ny].

    ``fx`` has shape (NFLUX, ny+2, nx+1); row jj maps to j = jj + g - 1 and
    face ff to fi = ff + g (the face between cells fi-1 and fi).
    """
    gm1 = gamma - 1.0
    kfac = gamma * rgas / (gm1 * pr)
    for jj in prange(ny + 2):
        j = jj + g - 1
        for ff in range(nx + 1):
            i0 = ff + g - 1
            i1 = i0 + 1

            rf = 0.5 * (rho[j, i0] + rho[j, i1])
            u1 = 0.5 * (ux[j, i0] + ux[j, i1])
            u2 = 0.5 * (uy[j, i0] + uy[j, i1])
            u3 = 0.5 * (uz[j, i0] + uz[j, i1])
            pf = 0.5 * (p[j, i0] + p[j, i1])
            b1 = 0.5 * (bx[j, i0] + bx[j, i1])
            b2 = 0.5 * (by[j, i0] + by[j, i1])
            b3 = 0.5 * (bz[j, i0] + bz[j, i1])
            invf = 1.0 / rf
            b2f = b1 * b1 + b2 * b2 + b3 * b3
            ubf = u1 * b1 + u2 * b2 + u3 * b3
            enf = pf / gm1 + 0.5 * rf * (u1 * u1 + u2 * u2 + u3 * u3) + 0.5 * b2f
            hf = (enf + pf) * invf

            a2 = gamma * pf * invf
            ss = a2 + b2f * invf
            disc = ss * ss - 4.0 * a2 * b1 * b1 * invf
            if disc < 0.0:
                disc = 0.0
            cf2 = 0.5 * (ss + np.sqrt(disc))
            cf = np.sqrt(cf2)
            tau = alpha * h / cf
            mu = tau * pf * sc
            kh = mu * kfac

            # Normal (x) and transverse (y) derivatives at the face.
            rx = 1.0 / hx
            ty = 0.25 / hy
            dxux = (ux[j, i1] - ux[j, i0]) * rx
            dxuy = (uy[j, i1] - uy[j, i0]) * rx
            dxuz = (uz[j, i1] - uz[j, i0]) * rx
            dxp = (p[j, i1] - p[j, i0]) * rx
            dyux = (ux[j + 1, i0] - ux[j - 1, i0] + ux[j + 1, i1] - ux[j - 1, i1]) * ty
            dyuy = (uy[j + 1, i0] - uy[j - 1, i0] + uy[j + 1, i1] - uy[j - 1, i1]) * ty
            dyuz = (uz[j + 1, i0] - uz[j - 1, i0] + uz[j + 1, i1] - uz[j - 1, i1]) * ty
            dyp = (p[j + 1, i0] - p[j - 1, i0] + p[j + 1, i1] - p[j - 1, i1]) * ty

            dxinv = (d[INV, j, i1] - d[INV, j, i0]) * rx
            dyinv = (d[INV, j + 1, i0] - d[INV, j - 1, i0]
                     + d[INV, j + 1, i1] - d[INV, j - 1, i1]) * ty
            dxtf = (d[TF, j, i1] - d[TF, j, i0]) * rx
            dytf = (d[TF, j + 1, i0] - d[TF, j - 1, i0]
                    + d[TF, j + 1, i1] - d[TF, j - 1, i1]) * ty
            dxb2h = (d[B2H, j, i1] - d[B2H, j, i0]) * rx
            dyb2h = (d[B2H, j + 1, i0] - d[B2H, j - 1, i0]
                     + d[B2H, j + 1, i1] - d[B2H, j - 1, i1]) * ty
            dxpxx = (d[PXX, j, i1] - d[PXX, j, i0]) * rx
            dxpxy = (d[PXY, j, i1] - d[PXY, j, i0]) * rx
            dypxy = (d[PXY, j + 1, i0] - d[PXY, j - 1, i0]
                     + d[PXY, j + 1, i1] - d[PXY, j - 1, i1]) * ty
            dypyy = (d[PYY, j + 1, i0] - d[PYY, j - 1, i0]
                     + d[PYY, j + 1, i1] - d[PYY, j - 1, i1]) * ty
            dxpxz = (d[PXZ, j, i1] - d[PXZ, j, i0]) * rx
            dypyz = (d[PYZ, j + 1, i0] - d[PYZ, j - 1, i0]
                     + d[PYZ, j + 1, i1] - d[PYZ, j - 1, i1]) * ty
            dxg12 = (d[G12, j, i1] - d[G12, j, i0]) * rx
            dyg12 = (d[G12, j + 1, i0] - d[G12, j - 1, i0]
                     + d[G12, j + 1, i1] - d[G12, j - 1, i1]) * ty
            dxg31 = (d[G31, j, i1] - d[G31, j, i0]) * rx
            dyg32 = (d[G32, j + 1, i0] - d[G32, j - 1, i0]
                     + d[G32, j + 1, i1] - d[G32, j - 1, i1]) * ty
            dxs11 = (d[S11, j, i1] - d[S11, j, i0]) * rx
            dxs12 = (d[S12, j, i1] - d[S12, j, i0]) * rx
            dxs13 = (d[S13, j, i1] - d[S13, j, i0]) * rx
            dys12 = (d[S12, j + 1, i0] - d[S12, j - 1, i0]
                     + d[S12, j + 1, i1] - d[S12, j - 1, i1]) * ty
            dys22 = (d[S22, j + 1, i0] - d[S22, j - 1, i0]
                     + d[S22, j + 1, i1] - d[S22, j - 1, i1]) * ty
            dys23 = (d[S23, j + 1, i0] - d[S23, j - 1, i0]
                     + d[S23, j + 1, i1] - d[S23, j - 1, i1]) * ty

            divu = dxux + dyuy
            dinv = -tau * (u1 * dxinv + u2 * dyinv - invf * divu)
            du1 = -tau * (u1 * dxux + u2 * dyux
                          + invf * (dxp + dxb2h - dxpxx - dypxy))
            du2 = -tau * (u1 * dxuy + u2 * dyuy
                          + invf * (dyp + dyb2h - dxpxy - dypyy))
            du3 = -tau * (u1 * dxuz + u2 * dyuz + invf * (-dxpxz - dypyz))
            deps = -tau * ((u1 * dxtf + u2 * dytf) / gm1 + pf * invf * divu)
            dpv = -tau * (u1 * dxp + u2 * dyp + gamma * pf * divu)
            db1 = tau * dyg12
            db2v = -tau * dxg12
            db3 = tau * (dxg31 + dyg32)

            ti = tau * invf
            jm1 = rf * (u1 - ti * (dxs11 + dys12))
            jm2 = rf * (u2 - ti * (dxs12 + dys22))
            jm3 = rf * (u3 - ti * (dxs13 + dys23))

            db2sum = 2.0 * (b1 * db1 + b2 * db2v + b3 * db3)
            pi11 = (mu * (2.0 * dxux - (2.0 / 3.0) * divu)
                    - rf * u1 * du1 - dpv - 0.5 * db2sum + 2.0 * b1 * db1)
            pi21 = mu * (dxuy + dyux) - rf * u2 * du1 + b2 * db1 + db2v * b1
            pi31 = mu * dxuz - rf * u3 * du1 + b3 * db1 + db3 * b1

            fx[FJM, jj, ff] = jm1
            fx[FM1, jj, ff] = jm1 * u1 + pf + 0.5 * b2f - b1 * b1 - pi11
            fx[FM2, jj, ff] = jm2 * u1 - b2 * b1 - pi21
            fx[FM3, jj, ff] = jm3 * u1 - b3 * b1 - pi31

            fcv = jm1 * (hf + 0.5 * b2f * invf) - b1 * ubf
            qn = (-kh * dxtf + rf * u1 * deps
                  + rf * u1 * (pf + b2f) * dinv
                  + u1 * (b1 * db1 + b2 * db2v + b3 * db3)
                  - b1 * (b1 * du1 + b2 * du2 + b3 * du3))
            pi12 = mu * (dxuy + dyux) - rf * u1 * du2 + b1 * db2v + db1 * b2
            pi13 = mu * dxuz - rf * u1 * du3 + b1 * db3 + db1 * b3
            piu = pi11 * u1 + pi12 * u2 + pi13 * u3
            fx[FEN, jj, ff] = fcv + qn - piu

            fx[FBT, jj, ff] = (u1 * b2 - u2 * b1
                               + du1 * b2 - du2 * b1 + u1 * db2v - u2 * db1)
            fx[FBZ, jj, ff] = (u1 * b3 - u3 * b1
                               + du1 * b3 - du3 * b1 + u1 * db3 - u3 * db1)


@njit(cache=True, parallel=True, error_model="numpy")
def flux_y(ux, uy, uz, p, rho, bx, by, bz, d,
           g, nx, ny, hx, hy, h, gamma, alpha, sc, pr, rgas, fy):
    """Flux bundle on y-faces fj in [g, g+ny] for columns i in [g-1, g+nx].

    ``fy`` has shape (NFLUX, ny+1, nx+2); row rr maps to fj = rr + g (face
    between cells fj-1 and fj) and column ii to i = ii + g - 1.
    """
    gm1 = gamma - 1.0
    kfac = gamma * rgas / (gm1 * pr)
    for rr in prange(ny + 1):
        j1 = rr + g
        j0 = j1 - 1
        for ii in range(nx + 2):
            i = ii + g - 1

            rf = 0.5 * (rho[j0, i] + rho[j1, i])
            u1 = 0.5 * (ux[j0, i] + ux[j1, i])
            u2 = 0.5 * (uy[j0, i] + uy[j1, i])
            u3 = 0.5 * (uz[j0, i] + uz[j1, i])
            pf = 0.5 * (p[j0, i] + p[j1, i])
            b1 = 0.5 * (bx[j0, i] + bx[j1, i])
            b2 = 0.5 * (by[j0, i] + by[j1, i])
            b3 = 0.5 * (bz[j0, i] + bz[j1, i])
            invf = 1.0 / rf
            b2f = b1 * b1 + b2 * b2 + b3 * b3
            ubf = u1 * b1 + u2 * b2 + u3 * b3
            enf = pf / gm1 + 0.5 * rf * (u1 * u1 + u2 * u2 + u3 * u3) + 0.5 * b2f
            hf = (enf + pf) * invf

            a2 = gamma * pf * invf
            ss = a2 + b2f * invf
            disc = ss * ss - 4.0 * a2 * b2 * b2 * invf
            if disc < 0.0:
                disc = 0.0
            cf2 = 0.5 * (ss + np.sqrt(disc))
            cf = np.sqrt(cf2)
            tau = alpha * h / cf
            mu = tau * pf * sc
            kh = mu * kfac

            ry = 1.0 / hy
            tx = 0.25 / hx
            dyux = (ux[j1, i] - ux[j0, i]) * ry
            dyuy = (uy[j1, i] - uy[j0, i]) * ry
            dyuz = (uz[j1, i] - uz[j0, i]) * ry
            dyp = (p[j1, i] - p[j0, i]) * ry
            dxux = (ux[j0, i + 1] - ux[j0, i - 1] + ux[j1, i + 1] - ux[j1, i - 1]) * tx
            dxuy = (uy[j0, i + 1] - uy[j0, i - 1] + uy[j1, i + 1] - uy[j1, i - 1]) * tx
            dxuz = (uz[j0, i + 1] - uz[j0, i - 1] + uz[j1, i + 1] - uz[j1, i - 1]) * tx
            dxp = (p[j0, i + 1] - p[j0, i - 1] + p[j1, i + 1] - p[j1, i - 1]) * tx

            dyinv = (d[INV, j1, i] - d[INV, j0, i]) * ry
            dxinv = (d[INV, j0, i + 1] - d[INV, j0, i - 1]
                     + d[INV, j1, i + 1] - d[INV, j1, i - 1]) * tx
            dytf = (d[TF, j1, i] - d[TF, j0, i]) * ry
            dxtf = (d[TF, j0, i + 1] - d[TF, j0, i - 1]
                    + d[TF, j1, i + 1] - d[TF, j1, i - 1]) * tx
            dyb2h = (d[B2H, j1, i] - d[B2H, j0, i]) * ry
            dxb2h = (d[B2H, j0, i + 1] - d[B2H, j0, i - 1]
                     + d[B2H, j1, i + 1] - d[B2H, j1, i - 1]) * tx
            dxpxx = (d[PXX, j0, i + 1] - d[PXX, j0, i - 1]
                     + d[PXX, j1, i + 1] - d[PXX, j1, i - 1]) * tx
            dxpxy = (d[PXY, j0, i + 1] - d[PXY, j0, i - 1]
                     + d[PXY, j1, i + 1] - d[PXY, j1, i - 1]) * tx
            dypxy = (d[PXY, j1, i] - d[PXY, j0, i]) * ry
            dypyy = (d[PYY, j1, i] - d[PYY, j0, i]) * ry
            dxpxz = (d[PXZ, j0, i + 1] - d[PXZ, j0, i - 1]
                     + d[PXZ, j1, i + 1] - d[PXZ, j1, i - 1]) * tx
            dypyz = (d[PYZ, j1, i] - d[PYZ, j0, i]) * ry
            dyg12 = (d[G12, j1, i] - d[G12, j0, i]) * ry
            dxg12 = (d[G12, j0, i + 1] - d[G12, j0, i - 1]
                     + d[G12, j1, i + 1] - d[G12, j1, i - 1]) * tx
            dxg31 = (d[G31, j0, i + 1] - d[G31, j0, i - 1]
                     + d[G31, j1, i + 1] - d[G31, j1, i - 1]) * tx
            dyg32 = (d[G32, j1, i] - d[G32, j0, i]) * ry
            dxs11 = (d[S11, j0, i + 1] - d[S11, j0, i - 1]
                     + d[S11, j1, i + 1] - d[S11, j1, i - 1]) * tx
            dxs12 = (d[S12, j0, i + 1] - d[S12, j0, i - 1]
                     + d[S12, j1, i + 1] - d[S12, j1, i - 1]) * tx
            dxs13 = (d[S13, j0, i + 1] - d[S13, j0, i - 1]
                     + d[S13, j1, i + 1] - d[S13, j1, i - 1]) * tx
            dys12 = (d[S12, j1, i] - d[S12, j0, i]) * ry
            dys22 = (d[S22, j1, i] - d[S22, j0, i]) * ry
            dys23 = (d[S23, j1, i] - d[S23, j0, i]) * ry

            divu = dxux + dyuy
            dinv = -tau * (u1 * dxinv + u2 * dyinv - invf * divu)
            du1 = -tau * (u1 * dxux + u2 * dyux
                          + invf * (dxp + dxb2h - dxpxx - dypxy))
            du2 = -tau * (u1 * dxuy + u2 * dyuy
                          + invf * (dyp + dyb2h - dxpxy - dypyy))
            du3 = -tau * (u1 * dxuz + u2 * dyuz + invf * (-dxpxz - dypyz))
            deps = -tau * ((u1 * dxtf + u2 * dytf) / gm1 + pf * invf * divu)
            dpv = -tau * (u1 * dxp + u2 * dyp + gamma * pf * divu)
            db1 = tau * dyg12
            db2v = -tau * dxg12
            db3 = tau * (dxg31 + dyg32)

            ti = tau * invf
            jm1 = rf * (u1 - ti * (dxs11 + dys12))
            jm2 = rf * (u2 - ti * (dxs12 + dys22))
            jm3 = rf * (u3 - ti * (dxs13 + dys23))

            db2sum = 2.0 * (b1 * db1 + b2 * db2v + b3 * db3)
            pi12 = mu * (dyux + dxuy) - rf * u1 * du2 + b1 * db2v + db1 * b2
            pi22 = (mu * (2.0 * dyuy - (2.0 / 3.0) * divu)
                    - rf * u2 * du2 - dpv - 0.5 * db2sum + 2.0 * b2 * db2v)
            pi32 = mu * dyuz - rf * u3 * du2 + b3 * db2v + db3 * b2

            fy[FJM, rr, ii] = jm2
            fy[FM1, rr, ii] = jm1 * u2 - b1 * b2 - pi12
            fy[FM2, rr, ii] = jm2 * u2 + pf + 0.5 * b2f - b2 * b2 - pi22
            fy[FM3, rr, ii] = jm3 * u2 - b3 * b2 - pi32

            fcv = jm2 * (hf + 0.5 * b2f * invf) - b2 * ubf
            qn = (-kh * dytf + rf * u2 * deps
                  + rf * u2 * (pf + b2f) * dinv
                  + u2 * (b1 * db1 + b2 * db2v + b3 * db3)
                  - b2 * (b1 * du1 + b2 * du2 + b3 * du3))
            pi21 = mu * (dyux + dxuy) - rf * u2 * du1 + b2 * db1 + db2v * b1
            pi23 = mu * dyuz - rf * u2 * du3 + b2 * db3 + db2v * b3
            piu = pi21 * u1 + pi22 * u2 + pi23 * u3
            fy[FEN, rr, ii] = fcv + qn - piu

            fy[FBT, rr, ii] = (u2 * b1 - u1 * b2
                               + du2 * b1 - du1 * b2 + u2 * db1 - u1 * db2v)
            fy[FBZ, rr, ii] = (u2 * b3 - u3 * b2
                               + du2 * b3 - du3 * b2 + u2 * db3 - u3 * db2v)


@njit(cache=True, parallel=True, error_model="numpy")
def update_cells(rho, mx, my, mz, en, bz, fx, fy, g, nx, ny, dtx, dty):
    """Conservative update of the cell-centered fields (interior only)."""
    for jc in prange(ny):
        j = jc + g
        jj = jc + 1           # x-flux row for this j
        rr = jc               # y-flux row of the bottom face
        for ic in range(nx):
            i = ic + g
            ff = ic           # x-face left of the cell
            ii = ic + 1       # y-flux column for this i
            rho[j, i] -= (dtx * (fx[FJM, jj, ff + 1] - fx[FJM, jj, ff])
                          + dty * (fy[FJM, rr + 1, ii] - fy[FJM, rr, ii]))
            mx[j, i] -= (dtx * (fx[FM1, jj, ff + 1] - fx[FM1, jj, ff])
                         + dty * (fy[FM1, rr + 1, ii] - fy[FM1, rr, ii]))
            my[j, i] -= (dtx * (fx[FM2, jj, ff + 1] - fx[FM2, jj, ff])
                         + dty * (fy[FM2, rr + 1, ii] - fy[FM2, rr, ii]))
            mz[j, i] -= (dtx * (fx[FM3, jj, ff + 1] - fx[FM3, jj, ff])
                         + dty * (fy[FM3, rr + 1, ii] - fy[FM3, rr, ii]))
            en[j, i] -= (dtx * (fx[FEN, jj, ff + 1] - fx[FEN, jj, ff])
                         + dty * (fy[FEN, rr + 1, ii] - fy[FEN, rr, ii]))
            bz[j, i] -= (dtx * (fx[FBZ, jj, ff + 1] - fx[FBZ, jj, ff])
                         + dty * (fy[FBZ, rr + 1, ii] - fy[FBZ, rr, ii]))


@njit(cache=True, parallel=True, error_model="numpy")
def corner_ez(fx, fy, g, nx, ny, ez):
    """Corner electric field E_z on the (ny+1, nx+1) interior corner lattice.

    Each of the four surrounding faces carries an induction flux whose
    smooth limit is (+/-) E_z: +E_z for the B_x flux through y-faces and
    -E_z for the B_y flux through x-faces.  Averaging the four implied E_z
    values gives the corner value used by the Stokes-theorem face update.
    """
    for rc in prange(ny + 1):
        for cc in range(nx + 1):
            ez[rc, cc] = 0.25 * (fy[FBT, rc, cc] + fy[FBT, rc, cc + 1]
                                 - fx[FBT, rc, cc] - fx[FBT, rc + 1, cc])


@njit(cache=True, parallel=True, error_model="numpy")
def update_faces(fbx, fby, ez, g, nx, ny, dtx, dty):
    """Stokes-theorem update of the staggered face fields (interior faces)."""
    for jc in prange(ny):
        j = jc + g
        for fc in range(nx + 1):
            fbx[j, fc + g] -= dty * (ez[jc + 1, fc] - ez[jc, fc])
    for rc in prange(ny + 1):
        fj = rc + g
        for ic in range(nx):
            fby[fj, ic + g] += dtx * (ez[rc, ic + 1] - ez[rc, ic])


# ----------------------------------------------------------------------
# Specialized single-row path for ny == 1 (rows identical, periodic y).
# ----------------------------------------------------------------------

@njit(cache=True, parallel=True, error_model="numpy")
def flux_x_row(ux, uy, uz, p, rho, bx, by, bz, d,
               g, nx, j, hx, h, gamma, alpha, sc, pr, rgas, fx):
    """x-face fluxes along one row with all y-derivatives zero.

    ``fx`` has shape (NFLUX, nx+1); entry ff is the face between cells
    ff+g-1 and ff+g of row ``j``.
    """
    gm1 = gamma - 1.0
    kfac = gamma * rgas / (gm1 * pr)
    rx = 1.0 / hx
    for ff in prange(nx + 1):
        i0 = ff + g - 1
        i1 = i0 + 1

        rf = 0.5 * (rho[j, i0] + rho[j, i1])
        u1 = 0.5 * (ux[j, i0] + ux[j, i1])
        u2 = 0.5 * (uy[j, i0] + uy[j, i1])
        u3 = 0.5 * (uz[j, i0] + uz[j, i1])
        pf = 0.5 * (p[j, i0] + p[j, i1])
        b1 = 0.5 * (bx[j, i0] + bx[j, i1])
        b2 = 0.5 * (by[j, i0] + by[j, i1])
        b3 = 0.5 * (bz[j, i0] + bz[j, i1])
        invf = 1.0 / rf
        b2f = b1 * b1 + b2 * b2 + b3 * b3
        ubf = u1 * b1 + u2 * b2 + u3 * b3
        enf = pf / gm1 + 0.5 * rf * (u1 * u1 + u2 * u2 + u3 * u3) + 0.5 * b2f
        hf = (enf + pf) * invf

        a2 = gamma * pf * invf
        ss = a2 + b2f * invf
        disc = ss * ss - 4.0 * a2 * b1 * b1 * invf
        if disc < 0.0:
            disc = 0.0
        cf = np.sqrt(0.5 * (ss + np.sqrt(disc)))
        tau = alpha * h / cf
        mu = tau * pf * sc
        kh = mu * kfac

        dxux = (ux[j, i1] - ux[j, i0]) * rx
        dxuy = (uy[j, i1] - uy[j, i0]) * rx
        dxuz = (uz[j, i1] - uz[j, i0]) * rx
        dxp = (p[j, i1] - p[j, i0]) * rx
        dxinv = (d[INV, j, i1] - d[INV, j, i0]) * rx
        dxtf = (d[TF, j, i1] - d[TF, j, i0]) * rx
        dxb2h = (d[B2H, j, i1] - d[B2H, j, i0]) * rx
        dxpxx = (d[PXX, j, i1] - d[PXX, j, i0]) * rx
        dxpxy = (d[PXY, j, i1] - d[PXY, j, i0]) * rx
        dxpxz = (d[PXZ, j, i1] - d[PXZ, j, i0]) * rx
        dxg12 = (d[G12, j, i1] - d[G12, j, i0]) * rx
        dxg31 = (d[G31, j, i1] - d[G31, j, i0]) * rx
        dxs11 = (d[S11, j, i1] - d[S11, j, i0]) * rx
        dxs12 = (d[S12, j, i1] - d[S12, j, i0]) * rx
        dxs13 = (d[S13, j, i1] - d[S13, j, i0]) * rx

        divu = dxux
        dinv = -tau * (u1 * dxinv - invf * divu)
        du1 = -tau * (u1 * dxux + invf * (dxp + dxb2h - dxpxx))
        du2 = -tau * (u1 * dxuy - invf * dxpxy)
        du3 = -tau * (u1 * dxuz - invf * dxpxz)
        deps = -tau * (u1 * dxtf / gm1 + pf * invf * divu)
        dpv = -tau * (u1 * dxp + gamma * pf * divu)
        db1 = 0.0
        db2v = -tau * dxg12
        db3 = tau * dxg31

        ti = tau * invf
        jm1 = rf * (u1 - ti * dxs11)
        jm2 = rf * (u2 - ti * dxs12)
        jm3 = rf * (u3 - ti * dxs13)

        db2sum = 2.0 * (b2 * db2v + b3 * db3)
        pi11 = (mu * (2.0 * dxux - (2.0 / 3.0) * divu)
                - rf * u1 * du1 - dpv - 0.5 * db2sum)
        pi21 = mu * dxuy - rf * u2 * du1 + db2v * b1
        pi31 = mu * dxuz - rf * u3 * du1 + db3 * b1

        fx[FJM, ff] = jm1
        fx[FM1, ff] = jm1 * u1 + pf + 0.5 * b2f - b1 * b1 - pi11
        fx[FM2, ff] = jm2 * u1 - b2 * b1 - pi21
        fx[FM3, ff] = jm3 * u1 - b3 * b1 - pi31

        fcv = jm1 * (hf + 0.5 * b2f * invf) - b1 * ubf
        qn = (-kh * dxtf + rf * u1 * deps
              + rf * u1 * (pf + b2f) * dinv
              + u1 * (b2 * db2v + b3 * db3)
              - b1 * (b1 * du1 + b2 * du2 + b3 * du3))
        pi12 = mu * dxuy - rf * u1 * du2 + b1 * db2v
        pi13 = mu * dxuz - rf * u1 * du3 + b1 * db3
        piu = pi11 * u1 + pi12 * u2 + pi13 * u3
        fx[FEN, ff] = fcv + qn - piu

        fx[FBT, ff] = u1 * b2 - u2 * b1 + du1 * b2 - du2 * b1 + u1 * db2v - u2 * db1
        fx[FBZ, ff] = u1 * b3 - u3 * b1 + du1 * b3 - du3 * b1 + u1 * db3 - u3 * db1


@njit(cache=True, parallel=True, error_model="numpy")
def bxflux_cells_row(ux, uy, uz, p, rho, bx, by, bz, d,
                     g, nx, j, hx, h, gamma, alpha, sc, pr, bfx):
    """Degenerate y-face induction flux of B_x, one value per cell.

    With identical rows the y-face state collapses onto the cell state and
    the transverse stencil onto the plain central difference.  ``bfx`` has
    nx+2 entries covering cells i in [g-1, g+nx].
    """
    tx = 0.5 / hx
    for ii in prange(nx + 2):
        i = ii + g - 1
        r = rho[j, i]
        u1 = ux[j, i]
        u2 = uy[j, i]
        u3 = uz[j, i]
        pp = p[j, i]
        b1 = bx[j, i]
        b2 = by[j, i]
        b3 = bz[j, i]
        inv = 1.0 / r

        a2 = gamma * pp * inv
        ss = a2 + 2.0 * d[B2H, j, i] * inv
        disc = ss * ss - 4.0 * a2 * b2 * b2 * inv
        if disc < 0.0:
            disc = 0.0
        cf = np.sqrt(0.5 * (ss + np.sqrt(disc)))
        tau = alpha * h / cf

        dxux = (ux[j, i + 1] - ux[j, i - 1]) * tx
        dxuy = (uy[j, i + 1] - uy[j, i - 1]) * tx
        dxp = (p[j, i + 1] - p[j, i - 1]) * tx
        dxb2h = (d[B2H, j, i + 1] - d[B2H, j, i - 1]) * tx
        dxpxx = (d[PXX, j, i + 1] - d[PXX, j, i - 1]) * tx
        dxpxy = (d[PXY, j, i + 1] - d[PXY, j, i - 1]) * tx
        dxg12 = (d[G12, j, i + 1] - d[G12, j, i - 1]) * tx

        du1 = -tau * (u1 * dxux + inv * (dxp + dxb2h - dxpxx))
        du2 = -tau * (u1 * dxuy - inv * dxpxy)
        db2v = -tau * dxg12

        bfx[ii] = u2 * b1 - u1 * b2 + du2 * b1 - du1 * b2 - u1 * db2v


@njit(cache=True, error_model="numpy")
def update_row(rho, mx, my, mz, en, bz, fby, fx, bfx, g, nx, j, dtx, ez):
    """Single-row conservative update plus the degenerate CT update of B_y.

    ``ez`` is scratch of length nx+1.  B_x faces are untouched (the corner
    field is y-uniform) and B_y is updated on both bounding face rows.
    """
    for fc in range(nx + 1):
        ez[fc] = 0.25 * (bfx[fc] + bfx[fc + 1] - 2.0 * fx[FBT, fc])
    for ic in range(nx):
        i = ic + g
        rho[j, i] -= dtx * (fx[FJM, ic + 1] - fx[FJM, ic])
        mx[j, i] -= dtx * (fx[FM1, ic + 1] - fx[FM1, ic])
        my[j, i] -= dtx * (fx[FM2, ic + 1] - fx[FM2, ic])
        mz[j, i] -= dtx * (fx[FM3, ic + 1] - fx[FM3, ic])
        en[j, i] -= dtx * (fx[FEN, ic + 1] - fx[FEN, ic])
        bz[j, i] -= dtx * (fx[FBZ, ic + 1] - fx[FBZ, ic])
        dby = dtx * (ez[ic + 1] - ez[ic])
        fby[j, i] += dby
        fby[j + 1, i] += dby
