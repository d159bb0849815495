"""Potential definitions, parameter validation, and effective momentum."""

import math

import numpy as np
import pytest

from wkb_spectra.core import (
    Coulomb,
    EffectiveMomentumSquared,
    Hulthen,
    IsotropicOscillator,
    LinearPlusOscillator,
    Morse,
    QuantumNumbers,
    TabulatedPotential,
    UnitsContext,
    effective_p2,
    evaluate_potential,
    make_potential,
)
from wkb_spectra.errors import ParameterError


def test_units_defaults():
    u = UnitsContext()
    assert u.hbar == 1.0 and u.mass == 1.0


@pytest.mark.parametrize("kwargs", [{"hbar": 0.0}, {"hbar": -1.0},
                                    {"mass": 0.0}, {"mass": -2.0}])
def test_units_must_be_positive(kwargs):
    with pytest.raises(ParameterError):
        UnitsContext(**kwargs)


def test_quantum_numbers_constraints():
    qn = QuantumNumbers(n_r=1, l=2, m_z=-2)
    assert (qn.n_r, qn.l, qn.m_z) == (1, 2, -2)
    for bad in [dict(n_r=-1, l=0, m_z=0), dict(n_r=0, l=-1, m_z=0),
                dict(n_r=0, l=1, m_z=2)]:
        with pytest.raises(ParameterError):
            QuantumNumbers(**bad)


def test_registry_round_trip():
    spec = make_potential("coulomb", alpha=2.0)
    assert isinstance(spec, Coulomb) and spec.alpha == 2.0
    assert isinstance(make_potential("oscillator", omega=1.0),
                      IsotropicOscillator)
    assert isinstance(make_potential("hulthen", v0=1.0, r0=1.0), Hulthen)
    assert isinstance(
        make_potential("morse", v0=1.0, r0=1.0, morse_alpha=1.0), Morse)
    assert isinstance(
        make_potential("linear_oscillator", k=1.0, omega=1.0),
        LinearPlusOscillator)


def test_registry_unknown_name_lists_known():
    with pytest.raises(ParameterError, match="coulomb"):
        make_potential("yukawa", g=1.0)


def test_registry_rejects_stray_params():
    with pytest.raises(ParameterError):
        make_potential("coulomb", alpha=1.0, beta=2.0)


@pytest.mark.parametrize("name,params", [
    ("coulomb", {"alpha": 0.0}),
    ("coulomb", {"alpha": -1.0}),
    ("oscillator", {"omega": -0.5}),
    ("hulthen", {"v0": -1.0, "r0": 1.0}),
    ("hulthen", {"v0": 1.0, "r0": 0.0}),
    ("morse", {"v0": 1.0, "r0": -1.0, "morse_alpha": 1.0}),
    ("morse", {"v0": 1.0, "r0": 1.0, "morse_alpha": 0.0}),
    ("linear_oscillator", {"k": -1.0, "omega": 1.0}),
    ("linear_oscillator", {"k": 0.0, "omega": 1.0}),
    ("linear_oscillator", {"k": 1.0, "omega": 0.0}),
])
def test_parameter_positivity(name, params):
    with pytest.raises(ParameterError):
        make_potential(name, **params)


def test_linear_oscillator_small_k_approaches_oscillator(units):
    # the k -> 0 limit is reached with tiny k, not k = 0 (strict positivity)
    spec = LinearPlusOscillator(k=1e-8, omega=2.0)
    assert evaluate_potential(spec, 1.0, units) == pytest.approx(2.0)


def test_potential_values(units):
    assert evaluate_potential(Coulomb(alpha=1.0), 2.0, units) == -0.5
    # V = m omega^2 r^2 / 2
    assert evaluate_potential(IsotropicOscillator(omega=2.0), 1.0,
                              units) == pytest.approx(2.0)
    assert evaluate_potential(Hulthen(v0=10.0, r0=1.0), math.log(2.0),
                              units) == pytest.approx(-10.0)
    assert evaluate_potential(Morse(v0=3.0, r0=2.0, morse_alpha=1.0), 2.0,
                              units) == pytest.approx(-3.0)
    assert evaluate_potential(LinearPlusOscillator(k=1.0, omega=1.0), 2.0,
                              units) == pytest.approx(2.0 + 2.0)


def test_potential_values_vectorized(units):
    r = np.array([0.5, 1.0, 2.0, 4.0])
    v = evaluate_potential(Coulomb(alpha=1.0), r, units)
    assert np.allclose(v, -1.0 / r)


@pytest.mark.parametrize("r", [0.0, -1.0])
def test_evaluate_rejects_nonpositive_radius(r, units):
    with pytest.raises(ParameterError):
        evaluate_potential(Coulomb(alpha=1.0), r, units)


def test_evaluate_rejects_nonfinite_result(units):
    # NaN slips past the r > 0 gate but poisons V(r)
    with pytest.raises(ParameterError):
        evaluate_potential(Coulomb(alpha=1.0), float("nan"), units)


def test_r_scale(units):
    assert Coulomb(alpha=2.0).r_scale(units) == pytest.approx(0.5)
    assert Hulthen(v0=1.0, r0=3.0).r_scale(units) == 3.0
    assert Morse(v0=1.0, r0=0.5, morse_alpha=1.0).r_scale(units) == 0.5
    assert IsotropicOscillator(omega=4.0).r_scale(units) == pytest.approx(0.5)


def test_flags():
    assert IsotropicOscillator(omega=1.0).confining
    assert LinearPlusOscillator(k=1.0, omega=1.0).confining
    assert not Coulomb(alpha=1.0).confining
    assert not Hulthen(v0=1.0, r0=1.0).confining
    assert not Morse(v0=1.0, r0=1.0, morse_alpha=1.0).confining
    assert IsotropicOscillator(omega=1.0).multiwell_capable
    assert LinearPlusOscillator(k=1.0, omega=1.0).multiwell_capable
    assert not Morse(v0=1.0, r0=1.0, morse_alpha=1.0).multiwell_capable


def test_effective_p2_turning_points(units):
    # p^2 = 2m(E - V) - M^2/r^2 vanishes at the classical turning points;
    # for alpha=1, E=-1/2, M2=1/4 these are the roots of r^2 - 2r + 1/4
    spec = Coulomb(alpha=1.0)
    tp = np.array([1.0 - math.sqrt(0.75), 1.0 + math.sqrt(0.75)])
    p2 = effective_p2(spec, 0.25, -0.5, units, tp)
    assert np.all(np.abs(p2) < 1e-12)
    inside = effective_p2(spec, 0.25, -0.5, units, 1.0)
    outside = effective_p2(spec, 0.25, -0.5, units, 3.0)
    assert inside > 0 > outside


def test_effective_momentum_callable(units):
    ev = EffectiveMomentumSquared(potential=Coulomb(alpha=1.0), m2=0.25,
                                  energy=-0.125, units=units)
    r = np.linspace(0.5, 1.5, 7)
    assert np.allclose(ev(r), effective_p2(Coulomb(alpha=1.0), 0.25,
                                           -0.125, units, r))


class TestTabulated:
    def _samples(self):
        r = np.linspace(0.1, 12.0, 400)
        return r, 0.5 * r * r

    def test_interpolates_through_samples(self, units):
        r, v = self._samples()
        spec = TabulatedPotential(r, v)
        assert np.allclose(evaluate_potential(spec, r[5:15], units), v[5:15])
        assert spec.numeric_only
        assert spec.support() == (pytest.approx(0.1), pytest.approx(12.0))

    def test_rejects_short_or_unsorted_input(self):
        with pytest.raises(ParameterError):
            TabulatedPotential([1.0, 2.0, 3.0], [0, 0, 0])
        with pytest.raises(ParameterError):
            TabulatedPotential([1.0, 3.0, 2.0, 4.0], [0, 0, 0, 0])
        with pytest.raises(ParameterError):
            TabulatedPotential([0.0, 1.0, 2.0, 3.0], [0, 0, 0, 0])

    def test_no_extrapolation(self, units):
        r, v = self._samples()
        spec = TabulatedPotential(r, v)
        with pytest.raises(ParameterError):
            evaluate_potential(spec, 15.0, units)


def test_kernel_params_agree_with_values(units):
    # the baked (a0, a1, a2) tuples must describe the same potential the
    # dataclass evaluates
    from wkb_spectra._backend import get_backend
    kern = get_backend("python")
    r = np.geomspace(0.05, 20.0, 64)
    cases = [
        Coulomb(alpha=1.3),
        IsotropicOscillator(omega=0.7),
        Hulthen(v0=4.0, r0=2.0),
        Morse(v0=2.0, r0=1.5, morse_alpha=0.8),
        LinearPlusOscillator(k=0.4, omega=1.1),
    ]
    for spec in cases:
        a0, a1, a2 = spec.kernel_params(units)
        got = kern.potential_array(spec.kernel_id, a0, a1, a2, r)
        assert np.allclose(got, spec.values(r, units), rtol=1e-14), spec
