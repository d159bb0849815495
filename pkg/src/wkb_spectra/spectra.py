"""Closed-form bound-state spectra for the five built-in potentials.

Every formula is written in terms of the quantized angular momentum
magnitude M = (l + 1/2) hbar and evaluated through a single M-parameterized
code path, so the l = 0 ground state is literally the same expression with
M = M0 = hbar/2. Both Morse variants are kept: the two-turning-point result
without the centrifugal term (valid at l = 0 only) and the variant that
keeps M**2/r**2, which quantizes differently. Their disagreement is real
and is surfaced by the oracle comparison, not hidden.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import (
    Coulomb,
    Hulthen,
    IsotropicOscillator,
    LinearPlusOscillator,
    Morse,
    Potential,
    UnitsContext,
)
from .errors import NoBoundStateError, ParameterError
from .quantizer import EnergyLevel

__all__ = [
    "coulomb_energy",
    "oscillator_energy",
    "hulthen_energy",
    "morse_energy",
    "linear_oscillator_energy",
    "ClosedFormSpectrum",
    "VARIANT_STANDARD",
    "VARIANT_MORSE_NO_CENTRIFUGAL",
    "VARIANT_MORSE_WITH_M",
]

VARIANT_STANDARD = "standard"
VARIANT_MORSE_NO_CENTRIFUGAL = "morse_no_centrifugal"
VARIANT_MORSE_WITH_M = "morse_with_m"


def _langer_m(l: int, hbar: float) -> float:
    return (l + 0.5) * hbar


def _coulomb_energy_m(alpha: float, mass: float, hbar: float,
                      n_r: int, m_ang: float) -> float:
    n_eff = (n_r + 0.5) * hbar + m_ang
    return -(alpha * alpha) * mass / (2.0 * n_eff * n_eff)


def coulomb_energy(alpha: float, mass: float, hbar: float,
                   n_r: int, l: int) -> float:
    """E = -alpha**2 m / (2 [(n_r + 1/2) hbar + (l + 1/2) hbar]**2)."""
    return _coulomb_energy_m(alpha, mass, hbar, n_r, _langer_m(l, hbar))


def _oscillator_energy_m(omega: float, mass: float, hbar: float,
                         n_r: int, m_ang: float) -> float:
    return omega * (2.0 * hbar * (n_r + 0.5) + m_ang)


def oscillator_energy(omega: float, mass: float, hbar: float,
                      n_r: int, l: int) -> float:
    """E = omega [2 hbar (n_r + 1/2) + (l + 1/2) hbar] = hbar omega (2n_r + l + 3/2)."""
    return _oscillator_energy_m(omega, mass, hbar, n_r, _langer_m(l, hbar))


def _hulthen_energy_m(v0: float, r0: float, mass: float, hbar: float,
                      n_r: int, m_ang: float) -> float:
    n_eff = (n_r + 0.5) * hbar + m_ang
    depth = 2.0 * mass * v0 * r0 * r0
    if not n_eff * n_eff < depth:
        raise NoBoundStateError(
            f"no bound state: N^2 = {n_eff * n_eff!r} >= 2 m V0 r0^2 = {depth!r}"
        )
    q = depth / n_eff - n_eff
    return -q * q / (8.0 * mass * r0 * r0)


def hulthen_energy(v0: float, r0: float, mass: float, hbar: float,
                   n_r: int, l: int) -> float:
    """E = -(2 m V0 r0**2 / N - N)**2 / (8 m r0**2), N = (n_r + l + 1) hbar.

    Bound states require N**2 < 2 m V0 r0**2.
    """
    return _hulthen_energy_m(v0, r0, mass, hbar, n_r, _langer_m(l, hbar))


def _morse_bracket(v0: float, morse_alpha: float, r0: float, mass: float,
                   numerator: float, require_bound: bool) -> float:
    bracket = 1.0 - morse_alpha * numerator / (r0 * math.sqrt(2.0 * mass * v0))
    if require_bound and bracket <= 0.0:
        raise NoBoundStateError(
            f"no bound state: Morse bracket factor {bracket!r} <= 0")
    return -v0 * bracket * bracket


def _morse_energy_m(v0: float, morse_alpha: float, r0: float, mass: float,
                    hbar: float, n_r: int, m_ang: float) -> float:
    # evaluated verbatim, negative bracket included: the centrifugal variant
    # can land there already at n_r = 0, and that small-magnitude level is
    # exactly the discrepancy the comparison report surfaces
    return _morse_bracket(v0, morse_alpha, r0, mass,
                          2.0 * hbar * (n_r + 0.5) + m_ang,
                          require_bound=False)


def morse_energy(v0: float, morse_alpha: float, r0: float, mass: float,
                 hbar: float, n_r: int, l: int = 0,
                 variant: str = VARIANT_MORSE_NO_CENTRIFUGAL) -> float:
    """Morse levels, either variant.

    no-centrifugal (l = 0 only):
        E = -V0 [1 - alpha hbar (n_r + 1/2) / (r0 sqrt(2 m V0))]**2
    with the centrifugal term kept:
        E = -V0 [1 - alpha (2 hbar (n_r + 1/2) + (l + 1/2) hbar)
                 / (r0 sqrt(2 m V0))]**2
    """
    if variant == VARIANT_MORSE_NO_CENTRIFUGAL:
        if l != 0:
            raise ParameterError(
                "the no-centrifugal Morse form is defined at l = 0 only")
        return _morse_bracket(v0, morse_alpha, r0, mass,
                              hbar * (n_r + 0.5), require_bound=True)
    if variant == VARIANT_MORSE_WITH_M:
        return _morse_energy_m(v0, morse_alpha, r0, mass, hbar, n_r,
                               _langer_m(l, hbar))
    raise ParameterError(f"unknown Morse variant {variant!r}")


def _linear_oscillator_energy_m(k: float, omega: float, mass: float,
                                hbar: float, n_r: int, m_ang: float) -> float:
    shift = k * k / (2.0 * mass * omega * omega)
    return omega * (2.0 * hbar * (n_r + 0.5) + m_ang) - shift


def linear_oscillator_energy(k: float, omega: float, mass: float, hbar: float,
                             n_r: int, l: int) -> float:
    """E = omega [2 hbar (n_r + 1/2) + (l + 1/2) hbar] - k**2/(2 m omega**2).

    k = 0 is allowed here (reduces to the pure oscillator), even though the
    potential class itself requires k > 0.
    """
    if k < 0:
        raise ParameterError(f"linear coefficient k must be >= 0, got {k}")
    return _linear_oscillator_energy_m(k, omega, mass, hbar, n_r,
                                       _langer_m(l, hbar))


_VARIANTS = (VARIANT_STANDARD, VARIANT_MORSE_NO_CENTRIFUGAL,
             VARIANT_MORSE_WITH_M)


@dataclass(frozen=True)
class ClosedFormSpectrum:
    """Dispatch from a potential instance to its closed-form levels."""

    spec: Potential
    variant: str = VARIANT_STANDARD
    units: UnitsContext = UnitsContext()

    def __post_init__(self):
        if self.variant not in _VARIANTS:
            raise ParameterError(f"unknown variant {self.variant!r}")
        if self.variant != VARIANT_STANDARD and not isinstance(self.spec, Morse):
            raise ParameterError(
                f"variant {self.variant!r} is only valid for the Morse kind")
        if isinstance(self.spec, Morse) and self.variant == VARIANT_STANDARD:
            raise ParameterError(
                "Morse needs an explicit variant: no-centrifugal or with-M")

    def energy(self, n_r: int, l: int) -> float:
        if n_r < 0 or l < 0:
            raise ParameterError(f"need n_r, l >= 0, got ({n_r}, {l})")
        u = self.units
        s = self.spec
        if isinstance(s, Coulomb):
            return coulomb_energy(s.alpha, u.mass, u.hbar, n_r, l)
        if isinstance(s, IsotropicOscillator):
            return oscillator_energy(s.omega, u.mass, u.hbar, n_r, l)
        if isinstance(s, Hulthen):
            return hulthen_energy(s.v0, s.r0, u.mass, u.hbar, n_r, l)
        if isinstance(s, Morse):
            return morse_energy(s.v0, s.morse_alpha, s.r0, u.mass, u.hbar,
                                n_r, l, variant=self.variant)
        if isinstance(s, LinearPlusOscillator):
            return linear_oscillator_energy(s.k, s.omega, u.mass, u.hbar,
                                            n_r, l)
        raise ParameterError(
            f"no closed form for potential kind {s.kind!r}")

    def level(self, n_r: int, l: int) -> EnergyLevel:
        # closed forms satisfy their quantization condition identically
        return EnergyLevel(energy=self.energy(n_r, l), method="closed",
                           residual=0.0, n_r=n_r, l=l)
