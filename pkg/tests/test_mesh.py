"""Mesh, boundary and staggered-field behavior."""

import numpy as np
import pytest

from qmhd.mesh import (BoundaryCondition, apply_boundaries, cell_b_from_faces,
                       div_b, init_faces_from_potential, max_div_b, new_grid)


def random_grid_state(grid, rng, gamma=5.0 / 3.0, amp=0.3):
    """Fill a grid with smooth random positive data (faces via potential).

    Fields are low-order Fourier combinations over the domain, smooth enough
    for the central scheme to step stably yet fully generic.
    """
    lx = grid.hx * grid.nx
    ly = grid.hy * grid.ny
    x = grid.xc_all()[None, :] / lx
    y = grid.yc_all()[:, None] / ly

    def smooth():
        c = rng.standard_normal(5)
        f = (c[0] * np.sin(2 * np.pi * x) + c[1] * np.cos(2 * np.pi * y)
             + c[2] * np.sin(2 * np.pi * (x + y)) + c[3] * np.cos(4 * np.pi * x)
             + c[4] * np.sin(4 * np.pi * y))
        return np.broadcast_to(f / 3.0, grid.rho.shape)

    grid.rho[:, :] = 1.0 + amp * smooth()
    grid.mx[:, :] = amp * smooth() * grid.rho
    grid.my[:, :] = amp * smooth() * grid.rho
    grid.mz[:, :] = amp * smooth() * grid.rho
    coef = rng.standard_normal(4)

    def az(xq, yq):
        return (lx / (2 * np.pi)) * (
            coef[0] * np.cos(2 * np.pi * xq / lx) + coef[1] * np.sin(2 * np.pi * xq / lx)
            + coef[2] * np.cos(2 * np.pi * yq / ly) + coef[3] * np.sin(2 * np.pi * yq / ly))

    init_faces_from_potential(grid, az)
    grid.bz[:, :] = amp * smooth()
    p = 1.0 + amp * smooth()
    grid.en[:, :] = (p / (gamma - 1.0)
                     + 0.5 * (grid.mx ** 2 + grid.my ** 2 + grid.mz ** 2) / grid.rho
                     + 0.5 * (grid.bx ** 2 + grid.by ** 2 + grid.bz ** 2))
    return grid


class TestNewGrid:
    def test_1d_spacing(self):
        g = new_grid(512, 1, (0.0, 1.0, 0.0, 1.0 / 512))
        assert g.hx == 1.0 / 512
        assert g.time == 0.0
        assert g.rho.shape == (1 + 4, 512 + 4)

    def test_square_spacing(self):
        g = new_grid(400, 400, (0.0, 1.0, 0.0, 1.0))
        assert g.hx == g.hy == 1.0 / 400
        assert g.fbx.shape == (404, 405)
        assert g.fby.shape == (405, 404)

    def test_rejects_bad_sizes(self):
        with pytest.raises(ValueError):
            new_grid(0, 4)
        with pytest.raises(ValueError):
            new_grid(4, 4, (1.0, 0.0, 0.0, 1.0))
        with pytest.raises(ValueError):
            new_grid(4, 4, ghost=1)

    def test_coordinates(self):
        g = new_grid(4, 2, (0.0, 1.0, 0.0, 0.5))
        assert np.allclose(g.xc(), [0.125, 0.375, 0.625, 0.875])
        assert np.allclose(g.yc(), [0.125, 0.375])


class TestBoundaries:
    def test_uniform_interior_any_kind(self):
        for kind in ("periodic", "zero-gradient", "fixed"):
            g = new_grid(6, 5)
            jsl, isl = g.interior
            g.rho[:, :] = -1.0  # poison ghosts
            g.rho[jsl, isl] = 3.25
            init = None
            if kind == "fixed":
                init = g.copy()
                init.rho[:, :] = 3.25
            bc = BoundaryCondition.from_axis_kinds(kind, kind)
            apply_boundaries(g, bc, init)
            assert np.all(g.rho == 3.25)

    def test_periodic_wraparound(self):
        g = new_grid(8, 1)
        jsl, isl = g.interior
        g.rho[jsl, isl] = np.sin(2 * np.pi * g.xc())
        apply_boundaries(g, BoundaryCondition())
        assert g.rho[2, 1] == g.rho[2, 1 + 8]
        assert g.rho[2, 0] == g.rho[2, 8]
        assert g.rho[2, 2 + 8] == g.rho[2, 2]

    def test_zero_gradient_copies_edge(self):
        g = new_grid(6, 1)
        jsl, isl = g.interior
        ramp = np.linspace(1.0, 2.0, 6)
        g.rho[jsl, isl] = ramp
        bc = BoundaryCondition.from_axis_kinds("zero-gradient", "periodic")
        apply_boundaries(g, bc)
        # copy of the edge value, not an extrapolation
        assert g.rho[2, 0] == ramp[0]
        assert g.rho[2, 1] == ramp[0]
        assert g.rho[2, -1] == ramp[-1]

    def test_fixed_freezes_initial(self):
        g = new_grid(6, 1)
        g.rho[:, :] = 7.0
        init = g.copy()
        g.rho[:, :] = 1.0  # interior evolves away
        bc = BoundaryCondition.from_axis_kinds("fixed", "periodic")
        apply_boundaries(g, bc, init)
        assert np.all(g.rho[:, :2] == 7.0)
        assert np.all(g.rho[:, -2:] == 7.0)
        assert np.all(g.rho[2, 2:8] == 1.0)

    def test_fixed_requires_initial(self):
        g = new_grid(4, 1)
        bc = BoundaryCondition.from_axis_kinds("fixed", "periodic")
        with pytest.raises(ValueError):
            apply_boundaries(g, bc, None)

    def test_periodic_must_pair(self):
        with pytest.raises(ValueError):
            BoundaryCondition(left="periodic", right="fixed")

    def test_idempotent(self):
        rng = np.random.default_rng(3)
        for bcx, bcy in (("periodic", "periodic"),
                         ("zero-gradient", "zero-gradient"),
                         ("fixed", "zero-gradient")):
            g = random_grid_state(new_grid(7, 6), rng)
            init = g.copy()
            bc = BoundaryCondition.from_axis_kinds(bcx, bcy)
            apply_boundaries(g, bc, init)
            once = g.copy()
            apply_boundaries(g, bc, init)
            for name in ("rho", "mx", "my", "mz", "en", "bx", "by", "bz",
                         "fbx", "fby"):
                assert np.array_equal(getattr(g, name), getattr(once, name)), name


class TestCellBFromFaces:
    def test_uniform(self):
        g = new_grid(5, 4)
        g.fbx[:, :] = 10.0
        cell_b_from_faces(g)
        assert np.all(g.bx == 10.0)

    def test_alternating(self):
        g = new_grid(4, 1)
        a, b = 1.0, 3.0
        g.fbx[:, 0::2] = a
        g.fbx[:, 1::2] = b
        cell_b_from_faces(g)
        assert np.all(g.bx == (a + b) / 2)

    def test_blast_field_along_x(self):
        from qmhd.problems import build
        g, _ = build("blast", 32)
        jsl, isl = g.interior
        assert np.all(g.bx[jsl, isl] == 10.0)
        assert np.all(g.by[jsl, isl] == 0.0)
        assert np.all(g.bz[jsl, isl] == 0.0)

    def test_shift_commutes(self):
        rng = np.random.default_rng(11)
        g = new_grid(6, 5)
        g.fbx[:, :] = rng.standard_normal(g.fbx.shape)
        cell_b_from_faces(g)
        before = g.bx.copy()
        g.fbx += 2.5
        cell_b_from_faces(g)
        assert np.allclose(g.bx, before + 2.5, atol=1e-15)


class TestDivergence:
    def test_potential_init_is_divergence_free(self):
        rng = np.random.default_rng(5)
        g = random_grid_state(new_grid(17, 13, (0.0, 2.0, 0.0, 1.5)), rng)
        assert max_div_b(g) < 1e-13

    def test_uniform_faces_zero_div(self):
        g = new_grid(6, 6)
        g.fbx[:, :] = 2.0
        g.fby[:, :] = -1.0
        assert np.all(div_b(g) == 0.0)

    def test_divergent_field_detected(self):
        g = new_grid(6, 6)
        g.fbx[:, :] = np.linspace(0, 1, g.fbx.shape[1])[None, :]
        assert max_div_b(g) > 0.0
