"""Quasiclassical radial eigenfunctions: synthesis, sampling, node counting.

Two forms are provided. The elementary standing wave cos(p_n r/hbar +
(pi/2) n_r) with constant momentum applies to the Coulomb case; the general
path is the leading-order WKB amplitude

    psi(r) = p(r)**(-1/2) cos( (1/hbar) integral_{r1}^{r} p dr' - pi/4 )

valid strictly inside the classically allowed interval. No Airy matching is
attempted: evaluation stops a guard band short of each turning point, where
the leading-order form diverges.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.integrate import cumulative_trapezoid, trapezoid

from .core import Potential, QuantumNumbers, UnitsContext
from .errors import (
    DegenerateSampleError,
    ParameterError,
    TurningPointProximityError,
    UndersampledError,
)
from .quantizer import P2Evaluator, TurningStructure, find_turning_structure

__all__ = [
    "FORM_STANDING_WAVE",
    "FORM_FULL_WKB",
    "WavefunctionSample",
    "radial_standing_wave",
    "full_wkb_radial",
    "sample_standing_wave",
    "sample_full_wkb",
    "count_nodes",
    "normalize_on_interval",
    "sample_to_csv",
]

FORM_STANDING_WAVE = "elementary_standing_wave"
FORM_FULL_WKB = "full_wkb"

_GUARD_FRACTION = 1e-3     # turning-point guard band, fraction of (r2 - r1)
_PHASE_STEP_MAX = 2.0 * math.pi / 32.0
_MIN_POINTS_PER_HALF_WAVE = 16
_ZERO_TOUCH_REL = 1e-12    # |psi| below this (relative) is a touched zero


@dataclass(frozen=True)
class WavefunctionSample:
    """Amplitudes on a strictly increasing radial grid plus provenance."""

    grid: np.ndarray
    values: np.ndarray
    form: str
    allowed_interval: tuple[float, float]
    qn: QuantumNumbers | None = None
    energy: float | None = None
    phases: np.ndarray | None = None

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if grid.ndim != 1 or grid.size < 2 or values.shape != grid.shape:
            raise ParameterError("sample needs matching 1-d grid and values")
        if not np.all(np.diff(grid) > 0):
            raise ParameterError("sample grid must be strictly increasing")
        if not np.all(np.isfinite(values)):
            raise ParameterError("sample values must be finite")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)


def radial_standing_wave(e_n: float, n_r: int,
                         units: UnitsContext = UnitsContext(), r=0.0):
    """cos(p_n r / hbar + (pi/2) n_r) with p_n = sqrt(2 m |E|), unnormalized.

    Requires E < 0: the constant-momentum form applies to Coulomb-like
    levels below the dissociation threshold.
    """
    if not e_n < 0:
        raise ParameterError(f"standing-wave form needs E < 0, got {e_n}")
    if n_r < 0:
        raise ParameterError(f"n_r must be >= 0, got {n_r}")
    p_n = math.sqrt(2.0 * units.mass * abs(e_n))
    r_arr = np.asarray(r, dtype=float)
    out = np.cos(p_n * r_arr / units.hbar + 0.5 * math.pi * n_r)
    return float(out) if np.ndim(r) == 0 else out


def _pick_interval(structure: TurningStructure, r_min: float,
                   r_max: float) -> tuple[float, float]:
    for a, b in structure.intervals:
        if a <= r_min and r_max <= b:
            return a, b
    raise ParameterError(
        f"[{r_min!r}, {r_max!r}] is not inside a classically allowed interval")


def full_wkb_radial(spec: Potential, m2: float, energy: float,
                    units: UnitsContext, structure: TurningStructure, r):
    """Leading-order WKB amplitude at r, phase integrated from the left
    turning point of the interval containing r.

    Raises TurningPointProximityError within the guard band
    delta = 1e-3 (r2 - r1) of either turning point.
    """
    r_arr = np.atleast_1d(np.asarray(r, dtype=float))
    a, b = _pick_interval(structure, float(r_arr.min()), float(r_arr.max()))
    delta = _GUARD_FRACTION * (b - a)
    if np.any(r_arr < a + delta) or np.any(r_arr > b - delta):
        raise TurningPointProximityError(
            f"r within {delta!r} of a turning point of ({a!r}, {b!r}); "
            "the leading-order amplitude diverges there")
    ev = P2Evaluator(spec, m2, units)
    out = np.empty_like(r_arr)
    for i, ri in enumerate(r_arr):
        chi = ev.action(energy, a, float(ri)) / units.hbar
        p = math.sqrt(float(ev.p2(energy, np.asarray([ri]))[0]))
        out[i] = math.cos(chi - 0.25 * math.pi) / math.sqrt(p)
    return float(out[0]) if np.ndim(r) == 0 else out


def sample_standing_wave(e_n: float, n_r: int,
                         units: UnitsContext = UnitsContext(),
                         r_max: float | None = None,
                         n_points: int = 4096,
                         qn: QuantumNumbers | None = None) -> WavefunctionSample:
    """Sample the elementary standing wave on [0, r_max] (default: the r
    where the phase reaches pi (n_r + 1/2), the outer turning point analog)."""
    p_n = math.sqrt(2.0 * units.mass * abs(e_n))
    if r_max is None:
        r_max = math.pi * (n_r + 0.5) * units.hbar / p_n
    grid = np.linspace(0.0, r_max, n_points)
    values = radial_standing_wave(e_n, n_r, units, grid)
    phases = p_n * grid / units.hbar + 0.5 * math.pi * n_r
    return WavefunctionSample(
        grid=grid, values=values, form=FORM_STANDING_WAVE,
        allowed_interval=(0.0, float(r_max)),
        qn=qn if qn is not None else QuantumNumbers(n_r=n_r, l=0),
        energy=e_n, phases=phases)


def sample_full_wkb(spec: Potential, m2: float, energy: float,
                    units: UnitsContext = UnitsContext(),
                    structure: TurningStructure | None = None,
                    n_points: int = 4096,
                    interval_index: int = 0,
                    qn: QuantumNumbers | None = None) -> WavefunctionSample:
    """Sample the full WKB form on an equal-phase grid inside one interval.

    Equal-phase sampling (uniform in the accumulated phase, not in r) keeps
    the node resolution uniform across the interval, including near turning
    points where the local wavelength shrinks slowly.
    """
    if structure is None:
        structure = find_turning_structure(spec, m2, energy, units)
    try:
        a, b = structure.intervals[interval_index]
    except IndexError:
        raise ParameterError(
            f"structure has {structure.k} interval(s), "
            f"index {interval_index} is out of range") from None
    ev = P2Evaluator(spec, m2, units)
    delta = _GUARD_FRACTION * (b - a)
    lo, hi = a + delta, b - delta

    # dense phase accumulation in the sin-map variable, then inversion
    n_dense = max(8 * n_points, 32768)
    u_lo = math.asin(max(-1.0, min(1.0, (2.0 * lo - a - b) / (b - a))))
    u_hi = math.asin(max(-1.0, min(1.0, (2.0 * hi - a - b) / (b - a))))
    u = np.linspace(u_lo, u_hi, n_dense)
    half = 0.5 * (b - a)
    r_dense = 0.5 * (a + b) + half * np.sin(u)
    p2 = np.asarray(ev.p2(energy, r_dense), dtype=float)
    np.maximum(p2, 0.0, out=p2)
    p_dense = np.sqrt(p2)
    integrand = p_dense * half * np.cos(u) / units.hbar
    chi0 = ev.action(energy, a, lo) / units.hbar
    chi_dense = chi0 + np.concatenate(
        ([0.0], cumulative_trapezoid(integrand, u)))

    chi_targets = np.linspace(chi_dense[0], chi_dense[-1], n_points)
    grid = np.interp(chi_targets, chi_dense, r_dense)
    # np.interp keeps monotonicity, but floating ties can collapse points
    keep = np.concatenate(([True], np.diff(grid) > 0))
    grid = grid[keep]
    chi_kept = chi_targets[keep]
    p_grid = np.sqrt(np.maximum(np.asarray(ev.p2(energy, grid), dtype=float),
                                1e-300))
    values = np.cos(chi_kept - 0.25 * math.pi) / np.sqrt(p_grid)
    return WavefunctionSample(
        grid=grid, values=values, form=FORM_FULL_WKB,
        allowed_interval=(float(a), float(b)),
        qn=qn, energy=energy, phases=chi_kept)


def count_nodes(sample: WavefunctionSample) -> int:
    """Strict sign changes of the sampled amplitude.

    Samples within 1e-12 (relative to the peak amplitude) of zero count as
    touched zeros, not crossings: a boundary node evaluates to roundoff
    noise of arbitrary sign and must not add a flip. The grid must resolve
    the oscillation: when phases are stored, adjacent samples may differ by
    at most 2 pi / 32; otherwise consecutive sign changes must be at least
    16 grid points apart.
    """
    values = sample.values
    if sample.phases is not None:
        steps = np.abs(np.diff(np.asarray(sample.phases, dtype=float)))
        if steps.size and float(steps.max()) > _PHASE_STEP_MAX:
            raise UndersampledError(
                f"max phase step {float(steps.max())!r} exceeds "
                f"{_PHASE_STEP_MAX!r}; refine the sampling grid")
    tol = _ZERO_TOUCH_REL * float(np.max(np.abs(values)))
    signs = np.sign(values)
    signs[np.abs(values) <= tol] = 0.0
    signs = signs[signs != 0]
    if signs.size < 2:
        return 0
    flips = np.flatnonzero(np.diff(signs) != 0)
    if sample.phases is None and flips.size > 1:
        # crude resolution guard: half-waves thinner than 16 samples are
        # indistinguishable from noise
        gaps = np.diff(np.flatnonzero(np.diff(np.sign(values)) != 0))
        if gaps.size and int(gaps.min()) < _MIN_POINTS_PER_HALF_WAVE:
            raise UndersampledError(
                f"sign changes only {int(gaps.min())} samples apart; "
                "refine the sampling grid")
    return int(flips.size)


def normalize_on_interval(sample: WavefunctionSample) -> WavefunctionSample:
    """Rescale so the trapezoid integral of psi**2 over the grid equals 1."""
    norm2 = float(trapezoid(sample.values**2, sample.grid))
    if not norm2 > 0.0 or not math.isfinite(norm2):
        raise DegenerateSampleError(
            f"cannot normalize: integral of psi**2 is {norm2!r}")
    return replace(sample, values=sample.values / math.sqrt(norm2))


def sample_to_csv(sample: WavefunctionSample) -> str:
    """Two-column CSV (r, psi) with a comment header carrying provenance."""
    buf = io.StringIO()
    qn = sample.qn
    qn_text = (f"n_r={qn.n_r} l={qn.l} m_z={qn.m_z}" if qn is not None
               else "n_r=? l=? m_z=?")
    energy_text = (repr(float(sample.energy))
                   if sample.energy is not None else "?")
    buf.write(f"# form={sample.form} {qn_text} energy={energy_text}\n")
    buf.write("r,psi\n")
    for r, v in zip(sample.grid, sample.values):
        buf.write(f"{float(r)!r},{float(v)!r}\n")
    return buf.getvalue()
