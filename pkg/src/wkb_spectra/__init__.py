"""Quasiclassical (WKB) bound-state solver for spherically symmetric potentials.

Quantizes angular momentum as M = (l + 1/2) hbar, root-finds bound energies
from phase-integral conditions (two turning points, or 2k turning points
with the Maslov offset), provides the closed-form spectra for five central
potentials, and cross-checks everything against an independent
finite-difference eigensolver.
"""

__version__ = "0.1.0"

from ._backend import backend_name
from .angular import (
    AngularEigenvalue,
    angular_wavefunction,
    eigenvalue_for,
    polar_phase_exact,
    polar_phase_integral,
    quantize_azimuthal,
    quantize_polar,
)
from .core import (
    Coulomb,
    EffectiveMomentumSquared,
    Hulthen,
    IsotropicOscillator,
    LinearPlusOscillator,
    Morse,
    POTENTIALS,
    Potential,
    QuantumNumbers,
    TabulatedPotential,
    UnitsContext,
    effective_p2,
    evaluate_potential,
    make_potential,
)
from .errors import (
    DegenerateSampleError,
    DomainTooSmallError,
    NoBoundStateError,
    NoClassicalRegionError,
    ParameterError,
    QuadratureConvergenceError,
    RootConvergenceError,
    SpectralError,
    StructureMismatchError,
    TurningPointProximityError,
    UndersampledError,
)
from .oracle import (
    ORACLE_LANGER,
    ORACLE_LL1,
    ComparisonRow,
    OracleResult,
    RadialGrid,
    compare_methods,
    diagonalize_radial,
)
from .quantizer import (
    EnergyLevel,
    P2Evaluator,
    PhaseIntegral,
    TurningStructure,
    find_turning_structure,
    phase_integral,
    quantize_2tp,
    quantize_multiwell,
)
from .spectra import (
    ClosedFormSpectrum,
    VARIANT_MORSE_NO_CENTRIFUGAL,
    VARIANT_MORSE_WITH_M,
    VARIANT_STANDARD,
    coulomb_energy,
    hulthen_energy,
    linear_oscillator_energy,
    morse_energy,
    oscillator_energy,
)
from .wavefunction import (
    FORM_FULL_WKB,
    FORM_STANDING_WAVE,
    WavefunctionSample,
    count_nodes,
    full_wkb_radial,
    normalize_on_interval,
    radial_standing_wave,
    sample_full_wkb,
    sample_standing_wave,
    sample_to_csv,
)

__all__ = [
    "__version__",
    "backend_name",
    # core
    "UnitsContext", "QuantumNumbers", "Potential", "Coulomb",
    "IsotropicOscillator", "Hulthen", "Morse", "LinearPlusOscillator",
    "TabulatedPotential", "POTENTIALS", "make_potential",
    "evaluate_potential", "effective_p2", "EffectiveMomentumSquared",
    # angular
    "AngularEigenvalue", "quantize_azimuthal", "quantize_polar",
    "eigenvalue_for", "polar_phase_integral", "polar_phase_exact",
    "angular_wavefunction",
    # quantizer
    "TurningStructure", "PhaseIntegral", "EnergyLevel", "P2Evaluator",
    "find_turning_structure", "phase_integral", "quantize_2tp",
    "quantize_multiwell",
    # spectra
    "ClosedFormSpectrum", "VARIANT_STANDARD",
    "VARIANT_MORSE_NO_CENTRIFUGAL", "VARIANT_MORSE_WITH_M",
    "coulomb_energy", "oscillator_energy", "hulthen_energy", "morse_energy",
    "linear_oscillator_energy",
    # wavefunction
    "WavefunctionSample", "FORM_STANDING_WAVE", "FORM_FULL_WKB",
    "radial_standing_wave", "full_wkb_radial", "sample_standing_wave",
    "sample_full_wkb", "count_nodes", "normalize_on_interval",
    "sample_to_csv",
    # oracle
    "RadialGrid", "OracleResult", "ComparisonRow", "ORACLE_LL1",
    "ORACLE_LANGER", "diagonalize_radial", "compare_methods",
    # errors
    "SpectralError", "ParameterError", "NoClassicalRegionError",
    "NoBoundStateError", "StructureMismatchError",
    "QuadratureConvergenceError", "RootConvergenceError",
    "TurningPointProximityError", "UndersampledError",
    "DegenerateSampleError", "DomainTooSmallError",
]
