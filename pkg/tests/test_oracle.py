"""Independent finite-difference eigenvalues and the comparison table."""

import math

import numpy as np
import pytest

from wkb_spectra.core import (
    Coulomb,
    Hulthen,
    IsotropicOscillator,
    Morse,
    TabulatedPotential,
    UnitsContext,
)
from wkb_spectra.errors import DomainTooSmallError, ParameterError
from wkb_spectra.oracle import (
    ORACLE_LANGER,
    ORACLE_LL1,
    ComparisonRow,
    RadialGrid,
    compare_methods,
    default_grid,
    diagonalize_radial,
)
from wkb_spectra.spectra import coulomb_energy, oscillator_energy


class TestRadialGrid:
    def test_validation(self):
        with pytest.raises(ParameterError):
            RadialGrid(1.0, 1.0, 4000)
        with pytest.raises(ParameterError):
            RadialGrid(-1.0, 10.0, 4000)
        with pytest.raises(ParameterError):
            RadialGrid(1e-6, 10.0, 100)
        with pytest.raises(ParameterError):
            RadialGrid(1e-6, 10.0, 4000, "chebyshev")

    def test_interior_excludes_walls(self):
        g = RadialGrid(1.0, 2.0, 999)
        r = g.interior()
        assert r.size == 999
        assert r[0] > 1.0 and r[-1] < 2.0
        step = np.diff(r)
        assert np.allclose(step, step[0])

    def test_refine_halves_step(self):
        g = RadialGrid(1.0, 2.0, 999)
        r1 = g.interior()
        r2 = g.interior(refine=2)
        assert r2.size == 2 * 999 + 1
        # every coarse node survives on the fine grid
        assert np.allclose(r2[1::2], r1)

    def test_log_spacing(self):
        g = RadialGrid(1e-4, 10.0, 500, "log")
        r = g.interior()
        ratios = r[1:] / r[:-1]
        assert np.allclose(ratios, ratios[0])


class TestDiagonalize:
    def test_coulomb_s_levels(self, units):
        res = diagonalize_radial(Coulomb(alpha=1.0), 0, ORACLE_LL1, units)
        want = [coulomb_energy(1.0, 1.0, 1.0, n, 0) for n in range(4)]
        for got, w in zip(res.eigenvalues, want):
            assert abs((got - w) / w) < 1e-4, (got, w)
        assert res.centrifugal_variant == ORACLE_LL1
        assert res.richardson

    def test_coulomb_p_levels(self, units):
        res = diagonalize_radial(Coulomb(alpha=1.0), 1, ORACLE_LL1, units,
                                 n_levels=3)
        want = [coulomb_energy(1.0, 1.0, 1.0, n, 1) for n in range(3)]
        for got, w in zip(res.eigenvalues, want):
            assert abs((got - w) / w) < 1e-4, (got, w)

    def test_oscillator_levels(self, units):
        res = diagonalize_radial(IsotropicOscillator(omega=1.0), 0,
                                 ORACLE_LL1, units, n_levels=3)
        assert np.allclose(res.eigenvalues, [1.5, 3.5, 5.5], rtol=1e-4)
        res1 = diagonalize_radial(IsotropicOscillator(omega=1.0), 1,
                                  ORACLE_LL1, units, n_levels=2)
        assert np.allclose(res1.eigenvalues, [2.5, 4.5], rtol=1e-4)

    def test_hulthen_textbook_levels(self, units):
        res = diagonalize_radial(Hulthen(v0=10.0, r0=1.0), 0, ORACLE_LL1,
                                 units, n_levels=2)
        assert res.eigenvalues[0] == pytest.approx(-45.125, abs=1e-5)
        assert res.eigenvalues[1] == pytest.approx(-8.0, abs=1e-5)

    def test_langer_variant_differs_from_physical(self, units):
        # adding (l+1/2)^2 instead of l(l+1) moves the discrete ground
        # state to -1/(2 [(1+sqrt 2)/2]^2), far from -0.5
        grid = RadialGrid(1e-4, 60.0, 4000)
        res = diagonalize_radial(Coulomb(alpha=1.0), 0, ORACLE_LANGER,
                                 units, grid=grid, n_levels=1)
        limit = -0.3431457505076198
        assert res.eigenvalues[0] == pytest.approx(limit, abs=1e-3)
        assert abs(res.eigenvalues[0] + 0.5) > 0.15

    def test_richardson_off_returns_raw(self, units):
        grid = RadialGrid(1e-9, 62.0, 2000)
        raw = diagonalize_radial(Coulomb(alpha=1.0), 0, ORACLE_LL1, units,
                                 grid=grid, n_levels=1, richardson=False)
        assert not raw.richardson
        assert raw.raw_fine is None
        assert np.all(raw.refinement_estimate == 0.0)
        assert np.array_equal(raw.eigenvalues, raw.raw_coarse)

    def test_second_order_convergence(self, units):
        # halving the step must shrink the error by ~4; the Richardson
        # extrapolation then lands well inside both raw errors
        grid = RadialGrid(1e-9, 62.0, 8000)
        res = diagonalize_radial(Coulomb(alpha=1.0), 0, ORACLE_LL1, units,
                                 grid=grid, n_levels=1)
        exact = -0.5
        err_c = abs(res.raw_coarse[0] - exact)
        err_f = abs(res.raw_fine[0] - exact)
        assert 3.0 < err_c / err_f < 5.0
        assert abs(res.eigenvalues[0] - exact) < err_f

    def test_refinement_estimate_brackets_error(self, units):
        res = diagonalize_radial(Coulomb(alpha=1.0), 0, ORACLE_LL1, units)
        want = [coulomb_energy(1.0, 1.0, 1.0, n, 0) for n in range(4)]
        err = np.abs(res.eigenvalues - np.asarray(want))
        # extrapolated error is far below the raw coarse-fine gap
        assert np.all(err < res.refinement_estimate)

    def test_box_widens_once_when_tail_leaks(self, units):
        res = diagonalize_radial(Coulomb(alpha=1.0), 0, ORACLE_LL1, units,
                                 grid=RadialGrid(1e-9, 20.0, 4000),
                                 n_levels=1)
        assert res.grid.r_max == 40.0
        assert res.grid.points == 8000
        assert res.eigenvalues[0] == pytest.approx(-0.5, abs=1e-6)

    def test_box_shrinks_once_when_wall_intrudes(self, units):
        res = diagonalize_radial(Coulomb(alpha=1.0), 0, ORACLE_LL1, units,
                                 grid=RadialGrid(0.01, 62.0, 4000),
                                 n_levels=1)
        assert res.grid.r_min == pytest.approx(0.0025)
        # the hard wall still biases the level linearly in r_min
        assert res.eigenvalues[0] == pytest.approx(-0.5, abs=0.01)

    def test_too_small_after_widening(self, units):
        with pytest.raises(DomainTooSmallError, match="tail"):
            diagonalize_radial(Coulomb(alpha=1.0), 0, ORACLE_LL1, units,
                               grid=RadialGrid(1e-9, 5.0, 4000), n_levels=3)

    def test_too_large_r_min_after_shrinking(self, units):
        with pytest.raises(DomainTooSmallError, match="inner"):
            diagonalize_radial(Coulomb(alpha=1.0), 0, ORACLE_LL1, units,
                               grid=RadialGrid(0.5, 62.0, 4000), n_levels=1)

    def test_validation(self, units):
        with pytest.raises(ParameterError):
            diagonalize_radial(Coulomb(alpha=1.0), -1, ORACLE_LL1, units)
        with pytest.raises(ParameterError):
            diagonalize_radial(Coulomb(alpha=1.0), 0, ORACLE_LL1, units,
                               n_levels=0)
        with pytest.raises(ParameterError, match="variant"):
            diagonalize_radial(Coulomb(alpha=1.0), 0, "exact", units)


class TestDefaultGrid:
    def test_tabulated_uses_support(self, units):
        r = np.linspace(0.2, 9.0, 50)
        spec = TabulatedPotential(r, 0.5 * r * r)
        g = default_grid(spec, units, 0, 2)
        assert (g.r_min, g.r_max) == (0.2, 9.0)
        assert g.spacing == "uniform"

    def test_boxes_scale_with_problem_size(self, units):
        small = default_grid(Coulomb(alpha=1.0), units, 0, 1)
        big = default_grid(Coulomb(alpha=1.0), units, 3, 6)
        assert big.r_max > 2.0 * small.r_max

    def test_hulthen_box_follows_binding(self, units):
        # weakly bound top level pushes the box far out
        g = default_grid(Hulthen(v0=10.0, r0=1.0), units, 0, 4)
        assert g.r_max > 50.0
        g2 = default_grid(Hulthen(v0=10.0, r0=1.0), units, 0, 2)
        assert g2.r_max < g.r_max


class TestCompare:
    def test_coulomb_table(self, units):
        rows = compare_methods(Coulomb(alpha=1.0), 0, range(3), units)
        assert [r.n_r for r in rows] == [0, 1, 2]
        for row in rows:
            d = row.deltas()
            assert abs(d["quadrature_minus_closed"]) < 1e-8
            assert abs(d["oracle_ll1_minus_closed"]) < 1e-3
            assert row.closed_with_m is None
        # the Langer-weighted discrete operator is a different problem and
        # its ground state shows it
        assert abs(rows[0].deltas()["oracle_langer_minus_closed"]) > 0.1

    def test_morse_table_shows_variant_gap(self, units):
        spec = Morse(v0=1.0, morse_alpha=1.0, r0=1.0)
        rows = compare_methods(spec, 0, [0], units)
        row = rows[0]
        assert row.closed == pytest.approx(-0.41789321881345254, abs=1e-12)
        assert row.closed_with_m == pytest.approx(-0.0036796564403574154,
                                                  abs=1e-12)
        assert row.deltas()["closed_with_m_minus_closed"] == pytest.approx(
            0.41421356237309515, rel=1e-9)
        # every numeric method lands far from the with-M closed form
        assert abs(row.oracle_ll1 - row.closed_with_m) > 0.1

    def test_morse_l1_has_no_closed_column(self, units):
        spec = Morse(v0=1.0, morse_alpha=1.0, r0=1.0)
        rows = compare_methods(spec, 1, [0], units)
        assert rows[0].closed is None
        assert "l=0" in rows[0].notes
        assert rows[0].closed_with_m is not None

    def test_hulthen_l1_quadrature_deficit_is_reported(self, units):
        # the Langer-M phase integral genuinely misses the closed form at
        # l=1; the table records the gap instead of hiding it
        rows = compare_methods(Hulthen(v0=10.0, r0=1.0), 1, [0], units)
        d = rows[0].deltas()["quadrature_minus_closed"]
        assert d == pytest.approx(0.0924835384619405, abs=1e-6)

    def test_unbound_cells_noted(self, units):
        # n_r = 1 is unbound for this shallow well: closed cell empty,
        # reason recorded
        rows = compare_methods(Hulthen(v0=1.0, r0=1.0), 0, [0, 1], units)
        assert rows[0].closed is not None
        assert rows[1].closed is None
        assert "no bound state" in rows[1].notes

    def test_range_validation(self, units):
        with pytest.raises(ParameterError):
            compare_methods(Coulomb(alpha=1.0), 0, [], units)
        with pytest.raises(ParameterError):
            compare_methods(Coulomb(alpha=1.0), 0, [-1, 0], units)

    def test_row_deltas_with_missing_cells(self):
        row = ComparisonRow(n_r=0, l=0, closed=None, quadrature=1.0,
                            oracle_ll1=None, oracle_langer=None)
        assert all(v is None for v in row.deltas().values())
