"""Turning-point location and action-matching energy solvers."""

import math

import numpy as np
import pytest

from wkb_spectra.core import (
    Coulomb,
    Hulthen,
    IsotropicOscillator,
    LinearPlusOscillator,
    Morse,
    TabulatedPotential,
    UnitsContext,
)
from wkb_spectra.errors import (
    NoBoundStateError,
    NoClassicalRegionError,
    ParameterError,
    RootConvergenceError,
    StructureMismatchError,
)
from wkb_spectra.quantizer import (
    find_turning_structure,
    phase_integral,
    quantize_2tp,
    quantize_multiwell,
)
from wkb_spectra.spectra import (
    coulomb_energy,
    linear_oscillator_energy,
    oscillator_energy,
)


class TestTurningStructure:
    def test_coulomb_ground_turning_points(self, units):
        # roots of r^2 - 2r + 1/4: 1 -+ sqrt(3)/2
        st = find_turning_structure(Coulomb(alpha=1.0), 0.25, -0.5, units)
        assert st.k == 1
        (a, b), = st.intervals
        assert a == pytest.approx(1.0 - math.sqrt(0.75), abs=1e-9)
        assert b == pytest.approx(1.0 + math.sqrt(0.75), abs=1e-9)

    def test_no_region_below_minimum(self, units):
        # E below the centrifugal barrier floor leaves p2 < 0 everywhere
        with pytest.raises(NoClassicalRegionError):
            find_turning_structure(Coulomb(alpha=1.0), 0.25, -10.0, units)

    def test_no_region_for_shallow_hulthen_at_high_l(self, units):
        # the centrifugal term swamps this well at every r for E < 0
        with pytest.raises(NoClassicalRegionError):
            find_turning_structure(Hulthen(v0=1.0, r0=1.0), 20.25, -0.05,
                                   units)

    def test_two_cuts_across_origin(self, units):
        # the analytic continuation keeps k r odd, so the r < 0 well is
        # deeper; the four turning points are the real roots of
        # r^4 + 2 r^3 - 8 r^2 + 1/4 at E=4, M2=1/4
        spec = LinearPlusOscillator(k=1.0, omega=1.0)
        st = find_turning_structure(spec, 0.25, 4.0, units,
                                    domain=(-1e3, 1e3))
        assert st.k == 2
        (a1, b1), (a2, b2) = st.intervals
        assert a1 < b1 < 0 < a2 < b2
        roots = np.sort(np.real(np.roots([1.0, 2.0, -8.0, 0.0, 0.25])))
        assert np.allclose([a1, b1, a2, b2], roots, atol=1e-9)


class TestPhaseIntegral:
    def test_coulomb_first_excited_action(self, units):
        # action at the N=2, l=0 level must equal pi hbar (n_r + 1/2)
        st = find_turning_structure(Coulomb(alpha=1.0), 0.25, -0.125, units)
        ph = phase_integral(Coulomb(alpha=1.0), 0.25, -0.125, units, st)
        assert ph.value == pytest.approx(1.5 * math.pi, rel=1e-10)
        assert ph.interval_values == (ph.value,)

    def test_action_splits_over_intervals(self, units):
        spec = LinearPlusOscillator(k=1.0, omega=1.0)
        st = find_turning_structure(spec, 0.25, 4.0, units,
                                    domain=(-1e3, 1e3))
        ph = phase_integral(spec, 0.25, 4.0, units, st)
        assert len(ph.interval_values) == 2
        assert all(v > 0.0 for v in ph.interval_values)
        # the deeper r < 0 well holds more action
        assert ph.interval_values[0] > ph.interval_values[1]
        assert ph.value == pytest.approx(sum(ph.interval_values), abs=1e-14)


class TestQuantize2TP:
    @pytest.mark.parametrize("n_r,l", [(0, 0), (1, 0), (0, 1), (2, 1)])
    def test_coulomb_matches_closed_form(self, n_r, l, units):
        m2 = ((l + 0.5) * units.hbar) ** 2
        lv = quantize_2tp(Coulomb(alpha=1.0), m2, n_r, units)
        want = coulomb_energy(1.0, 1.0, 1.0, n_r, l)
        assert lv.energy == pytest.approx(want, rel=1e-10)
        assert lv.method == "quadrature"
        assert lv.n_r == n_r and lv.k == 1
        assert abs(lv.residual) < 1e-9

    @pytest.mark.parametrize("n_r,l", [(0, 0), (1, 2), (3, 0)])
    def test_oscillator_matches_closed_form(self, n_r, l, units):
        m2 = ((l + 0.5) * units.hbar) ** 2
        lv = quantize_2tp(IsotropicOscillator(omega=1.0), m2, n_r, units)
        want = oscillator_energy(1.0, 1.0, 1.0, n_r, l)
        assert lv.energy == pytest.approx(want, rel=1e-10)

    def test_negative_n_r_rejected(self, units):
        with pytest.raises(ParameterError):
            quantize_2tp(Coulomb(alpha=1.0), 0.25, -1, units)

    def test_explicit_bracket_used(self, units):
        lv = quantize_2tp(Coulomb(alpha=1.0), 0.25, 0, units,
                          e_bracket=(-0.9, -0.2))
        assert lv.energy == pytest.approx(-0.5, rel=1e-10)

    def test_wrong_bracket_replaced(self, units):
        # a bracket that misses the root falls back to the automatic one
        lv = quantize_2tp(Coulomb(alpha=1.0), 0.25, 0, units,
                          e_bracket=(-0.4, -0.3))
        assert lv.energy == pytest.approx(-0.5, rel=1e-10)

    def test_mass_dependence(self):
        # E scales with m for Coulomb; exercises the m != 1 path end to end
        u = UnitsContext(mass=2.0)
        lv = quantize_2tp(Coulomb(alpha=1.0), 0.25, 0, u)
        assert lv.energy == pytest.approx(-1.0, rel=1e-10)

    def test_linear_oscillator_heavy_mass(self):
        # the quadratic term carries the mass factor, so the multiwell
        # quantization and the closed form must agree away from m = 1
        u = UnitsContext(mass=2.0)
        lv = quantize_multiwell(LinearPlusOscillator(k=1.0, omega=1.0),
                                0.25, 2, 2, u, domain=(-1e3, 1e3))
        want = linear_oscillator_energy(1.0, 1.0, 2.0, 1.0, 1, 0)
        assert lv.energy == pytest.approx(want, rel=1e-10)

    def test_tabulated_oscillator(self, units):
        r = np.linspace(1e-3, 12.0, 3000)
        spec = TabulatedPotential(r, 0.5 * r * r)
        # the table's interpolation error is ~1e-6, so 1e-12 quadrature
        # would only burn time; match the tolerances to the data
        lv = quantize_2tp(spec, 0.25, 1, units, rel_tol_quad=1e-8,
                          tol_root=1e-7)
        assert lv.energy == pytest.approx(3.5, abs=1e-5)


class TestQuantizeMultiwell:
    @pytest.mark.parametrize("n_r", [0, 1, 2, 3])
    def test_oscillator_double_well_equals_single(self, n_r, units):
        # symmetric extension: N = 2 n_r, k = 2 reproduces the 2TP level
        m2 = 0.25
        two = quantize_2tp(IsotropicOscillator(omega=1.0), m2, n_r, units)
        multi = quantize_multiwell(IsotropicOscillator(omega=1.0), m2,
                                   2 * n_r, 2, units, domain=(-1e3, 1e3))
        assert multi.energy == pytest.approx(two.energy, rel=1e-8)
        assert multi.method == "multiwell"
        assert multi.k == 2 and multi.n_total == 2 * n_r

    @pytest.mark.parametrize("n_r,l", [(1, 0), (2, 1), (3, 2)])
    def test_linear_oscillator_excited_rows(self, n_r, l, units):
        m2 = ((l + 0.5) * units.hbar) ** 2
        lv = quantize_multiwell(LinearPlusOscillator(k=1.0, omega=1.0), m2,
                                2 * n_r, 2, units, domain=(-1e3, 1e3))
        want = linear_oscillator_energy(1.0, 1.0, 1.0, 1.0, n_r, l)
        assert lv.energy == pytest.approx(want, rel=1e-8)

    def test_linear_oscillator_ground_row_collapses(self, units):
        # at the N=0 energy the kink at r=0 leaves a single allowed
        # interval; the second cut sits off the real axis
        with pytest.raises(StructureMismatchError) as err:
            quantize_multiwell(LinearPlusOscillator(k=1.0, omega=1.0), 0.25,
                               0, 2, units, domain=(-1e3, 1e3))
        assert err.value.found == 1

    def test_morse_has_no_second_real_cut(self, units):
        spec = Morse(v0=100.0, morse_alpha=1.0, r0=1.0)
        with pytest.raises(StructureMismatchError):
            quantize_multiwell(spec, 0.25, 2, 2, units, domain=(-40.0, 40.0))

    def test_validation(self, units):
        spec = IsotropicOscillator(omega=1.0)
        with pytest.raises(ParameterError):
            quantize_multiwell(spec, 0.25, -1, 2, units)
        with pytest.raises(ParameterError):
            quantize_multiwell(spec, 0.25, 0, 0, units)

    def test_k_one_equals_2tp(self, units):
        # single-cut multiwell on the half line is the ordinary condition
        # with N = n_r
        lv = quantize_multiwell(IsotropicOscillator(omega=1.0), 0.25, 2, 1,
                                units, domain=(1e-6, 1e3))
        want = quantize_2tp(IsotropicOscillator(omega=1.0), 0.25, 2, units)
        assert lv.energy == pytest.approx(want.energy, rel=1e-9)


def test_residual_is_scaled_action_mismatch(units):
    lv = quantize_2tp(Coulomb(alpha=1.0), 0.25, 0, units)
    # (action - target) / (pi hbar), dimensionless
    assert abs(lv.residual) < 1e-9


def test_root_convergence_failure(units):
    # an absurdly tight root tolerance on a flat stretch must not loop
    # forever; either it converges or reports failure, never hangs
    try:
        quantize_2tp(Coulomb(alpha=1.0), 0.25, 0, units, tol_root=1e-16)
    except RootConvergenceError:
        pass
