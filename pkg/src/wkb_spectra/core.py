"""Units, quantum numbers, central potentials and the effective radial momentum.

Everything downstream works with the squared radial momentum

    p2(r) = 2 m (E - V(r)) - M2 / r**2

where M2 is the squared total angular momentum handed over by the angular
module ((l + 1/2)**2 hbar**2 for integer l) and V is one of the five built-in
central potentials or a tabulated numeric one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import PchipInterpolator

from .errors import ParameterError

__all__ = [
    "UnitsContext",
    "QuantumNumbers",
    "Potential",
    "Coulomb",
    "IsotropicOscillator",
    "Hulthen",
    "Morse",
    "LinearPlusOscillator",
    "TabulatedPotential",
    "POTENTIALS",
    "make_potential",
    "evaluate_potential",
    "effective_p2",
    "EffectiveMomentumSquared",
]


@dataclass(frozen=True)
class UnitsContext:
    """Values of hbar and the particle mass used in every formula."""

    hbar: float = 1.0
    mass: float = 1.0

    def __post_init__(self):
        if not (self.hbar > 0 and math.isfinite(self.hbar)):
            raise ParameterError(f"hbar must be positive and finite, got {self.hbar}")
        if not (self.mass > 0 and math.isfinite(self.mass)):
            raise ParameterError(f"mass must be positive and finite, got {self.mass}")


@dataclass(frozen=True)
class QuantumNumbers:
    """Radial node count n_r, orbital l and magnetic m_z with |m_z| <= l."""

    n_r: int
    l: int
    m_z: int = 0

    def __post_init__(self):
        if self.n_r < 0:
            raise ParameterError(f"n_r must be >= 0, got {self.n_r}")
        if self.l < 0:
            raise ParameterError(f"l must be >= 0, got {self.l}")
        if abs(self.m_z) > self.l:
            raise ParameterError(f"|m_z| <= l required, got m_z={self.m_z}, l={self.l}")


def _require_positive(**params):
    for name, value in params.items():
        if not (value > 0 and math.isfinite(value)):
            raise ParameterError(f"{name} must be positive and finite, got {value}")


# Kernel dispatch ids, shared with _kernels_py / _kernels.
KIND_COULOMB = 0
KIND_OSCILLATOR = 1
KIND_HULTHEN = 2
KIND_MORSE = 3
KIND_LINEAR_OSC = 4
KIND_TABULATED = -1


class Potential:
    """Base class for central potentials V(r)."""

    kind: str = "abstract"
    kernel_id: int = KIND_TABULATED
    confining: bool = False          # True if V -> +inf as r -> inf
    multiwell_capable: bool = False  # True if V extends naturally to r < 0
    numeric_only: bool = False       # True if no closed-form spectrum exists

    def values(self, r, units: UnitsContext):
        """Vectorized V(r); r may be a scalar or ndarray, any nonzero real."""
        raise NotImplementedError

    def kernel_params(self, units: UnitsContext) -> tuple[float, float, float]:
        raise NotImplementedError

    def r_scale(self, units: UnitsContext) -> float:
        """Natural length used to size scan grids."""
        raise NotImplementedError


@dataclass(frozen=True)
class Coulomb(Potential):
    """V(r) = -alpha / r."""

    alpha: float
    kind = "coulomb"
    kernel_id = KIND_COULOMB

    def __post_init__(self):
        _require_positive(alpha=self.alpha)

    def values(self, r, units):
        return -self.alpha / np.asarray(r, dtype=float)

    def kernel_params(self, units):
        return (self.alpha, 0.0, 0.0)

    def r_scale(self, units):
        return units.hbar**2 / (units.mass * self.alpha)


@dataclass(frozen=True)
class IsotropicOscillator(Potential):
    """V(r) = (1/2) m omega**2 r**2."""

    omega: float
    kind = "oscillator"
    kernel_id = KIND_OSCILLATOR
    confining = True
    multiwell_capable = True

    def __post_init__(self):
        _require_positive(omega=self.omega)

    def values(self, r, units):
        r = np.asarray(r, dtype=float)
        return 0.5 * units.mass * self.omega**2 * r * r

    def kernel_params(self, units):
        return (0.5 * units.mass * self.omega**2, 0.0, 0.0)

    def r_scale(self, units):
        return math.sqrt(units.hbar / (units.mass * self.omega))


@dataclass(frozen=True)
class Hulthen(Potential):
    """V(r) = -V0 exp(-r/r0) / (1 - exp(-r/r0)), computed as -V0/expm1(r/r0)."""

    v0: float
    r0: float
    kind = "hulthen"
    kernel_id = KIND_HULTHEN

    def __post_init__(self):
        _require_positive(v0=self.v0, r0=self.r0)

    def values(self, r, units):
        r = np.asarray(r, dtype=float)
        with np.errstate(over="ignore"):
            return -self.v0 / np.expm1(r / self.r0)

    def kernel_params(self, units):
        return (self.v0, 1.0 / self.r0, 0.0)

    def r_scale(self, units):
        return self.r0


@dataclass(frozen=True)
class Morse(Potential):
    """V(r) = V0 [exp(-2 a (r/r0 - 1)) - 2 exp(-a (r/r0 - 1))], minimum -V0 at r0.

    The exponent steepness is exposed as morse_alpha to match the external
    parameter table (the Coulomb strength is already called alpha).
    """

    v0: float
    morse_alpha: float
    r0: float
    kind = "morse"
    kernel_id = KIND_MORSE

    def __post_init__(self):
        _require_positive(v0=self.v0, morse_alpha=self.morse_alpha, r0=self.r0)

    def values(self, r, units):
        r = np.asarray(r, dtype=float)
        with np.errstate(over="ignore"):
            y = np.exp(-self.morse_alpha * (r - self.r0) / self.r0)
        return self.v0 * (y * y - 2.0 * y)

    def kernel_params(self, units):
        return (self.v0, self.morse_alpha / self.r0, self.r0)

    def r_scale(self, units):
        return self.r0


@dataclass(frozen=True)
class LinearPlusOscillator(Potential):
    """V(r) = k r + (1/2) m omega**2 r**2.

    The mass factor in the quadratic term keeps the phase integral and the
    closed-form spectrum consistent for mass != 1.
    """

    k: float
    omega: float
    kind = "linear_oscillator"
    kernel_id = KIND_LINEAR_OSC
    confining = True
    multiwell_capable = True

    def __post_init__(self):
        _require_positive(k=self.k, omega=self.omega)

    def values(self, r, units):
        r = np.asarray(r, dtype=float)
        return self.k * r + 0.5 * units.mass * self.omega**2 * r * r

    def kernel_params(self, units):
        return (self.k, 0.5 * units.mass * self.omega**2, 0.0)

    def r_scale(self, units):
        return math.sqrt(units.hbar / (units.mass * self.omega))


@dataclass(frozen=True)
class TabulatedPotential(Potential):
    """User potential given as (r, V) samples, monotone-cubic interpolated.

    Numeric-only: no closed form, no analytic continuation. Evaluation is
    restricted to the sampled support; the quantizer confines its search
    domain accordingly.
    """

    r_samples: np.ndarray
    v_samples: np.ndarray
    _interp: PchipInterpolator = field(init=False, repr=False, compare=False)

    kind = "tabulated"
    kernel_id = KIND_TABULATED
    numeric_only = True

    def __post_init__(self):
        r = np.asarray(self.r_samples, dtype=float)
        v = np.asarray(self.v_samples, dtype=float)
        if r.ndim != 1 or r.size < 4:
            raise ParameterError("tabulated potential needs at least 4 samples")
        if v.shape != r.shape:
            raise ParameterError("r and V sample arrays must have equal length")
        if not np.all(np.diff(r) > 0):
            raise ParameterError("r samples must be strictly increasing")
        if r[0] <= 0:
            raise ParameterError("tabulated support must satisfy r > 0")
        if not (np.all(np.isfinite(r)) and np.all(np.isfinite(v))):
            raise ParameterError("tabulated samples must be finite")
        object.__setattr__(self, "r_samples", r)
        object.__setattr__(self, "v_samples", v)
        object.__setattr__(self, "_interp", PchipInterpolator(r, v, extrapolate=False))

    def values(self, r, units):
        r = np.asarray(r, dtype=float)
        out = self._interp(r)
        if np.any(np.isnan(out)):
            raise ParameterError(
                "tabulated potential evaluated outside its support "
                f"[{self.r_samples[0]:g}, {self.r_samples[-1]:g}]"
            )
        return out

    def kernel_params(self, units):
        raise ParameterError("tabulated potentials have no kernel form")

    def r_scale(self, units):
        return float(self.r_samples[-1] - self.r_samples[0])

    def support(self) -> tuple[float, float]:
        return float(self.r_samples[0]), float(self.r_samples[-1])


POTENTIALS = {
    "coulomb": Coulomb,
    "oscillator": IsotropicOscillator,
    "hulthen": Hulthen,
    "morse": Morse,
    "linear_oscillator": LinearPlusOscillator,
}


def make_potential(name: str, **params) -> Potential:
    """Build a built-in potential from its registry name and keyword params."""
    try:
        cls = POTENTIALS[name.lower()]
    except KeyError:
        known = ", ".join(sorted(POTENTIALS))
        raise ParameterError(f"unknown potential {name!r}; known: {known}") from None
    try:
        return cls(**params)
    except TypeError as exc:
        raise ParameterError(f"bad parameters for {name!r}: {exc}") from None


def evaluate_potential(spec: Potential, r, units: UnitsContext = UnitsContext()):
    """V(r) for r > 0. Raises ParameterError on r <= 0 or non-finite results."""
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr <= 0):
        raise ParameterError("evaluate_potential requires r > 0")
    out = spec.values(r_arr, units)
    if not np.all(np.isfinite(out)):
        raise ParameterError(f"{spec.kind} potential overflowed at r={r}")
    return out if np.ndim(r) else float(out)


def effective_p2(spec: Potential, m2: float, energy: float, units: UnitsContext, r):
    """2 m (E - V(r)) - M2/r**2, the squared radial momentum."""
    r_arr = np.asarray(r, dtype=float)
    out = 2.0 * units.mass * (energy - spec.values(r_arr, units)) - m2 / (r_arr * r_arr)
    return out if np.ndim(r) else float(out)


@dataclass(frozen=True)
class EffectiveMomentumSquared:
    """The function r -> 2 m (E - V(r)) - M2/r**2 with its ingredients pinned."""

    potential: Potential
    m2: float
    energy: float
    units: UnitsContext

    def __post_init__(self):
        if self.m2 < 0:
            raise ParameterError(f"M2 must be >= 0, got {self.m2}")

    def __call__(self, r):
        return effective_p2(self.potential, self.m2, self.energy, self.units, r)
