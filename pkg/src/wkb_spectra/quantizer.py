"""Turning-point location, phase integrals and energy root finding.

Bound-state energies solve

    sum_i integral_{a_i}^{b_i} sqrt(p2(r)) dr = pi hbar (n_r + 1/2)      (one cut)
    sum_i integral_{a_i}^{b_i} sqrt(p2(r)) dr = pi hbar (N_total + k/2)  (k cuts)

where the (a_i, b_i) are the classically allowed intervals of the effective
momentum p2(r) = 2m(E - V) - M2/r**2. The total action is continuous and
strictly increasing in E (a new cut is born with zero width, so even a cut
count change keeps it continuous), which makes bisection globally convergent
once the energy is bracketed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from . import _backend
from .core import KIND_TABULATED, Potential, TabulatedPotential, UnitsContext
from .errors import (
    NoBoundStateError,
    NoClassicalRegionError,
    ParameterError,
    RootConvergenceError,
    StructureMismatchError,
)
from .quadrature import action_between, adaptive_refine, gauss_legendre_nodes

__all__ = [
    "TurningStructure",
    "PhaseIntegral",
    "EnergyLevel",
    "P2Evaluator",
    "find_turning_structure",
    "phase_integral",
    "quantize_2tp",
    "quantize_multiwell",
    "default_domain",
]

_SCAN_POINTS = 2048
_SCAN_INNER = 1e-6   # inner scan edge, units of r_scale
_SCAN_OUTER = 1e3    # outer scan edge, units of r_scale


@dataclass(frozen=True)
class TurningStructure:
    """Ordered classically allowed intervals of p2 at one energy."""

    energy: float
    intervals: tuple[tuple[float, float], ...]

    @property
    def k(self) -> int:
        return len(self.intervals)


@dataclass(frozen=True)
class PhaseIntegral:
    """Total action at one energy, with the per-interval split."""

    value: float
    energy: float
    interval_values: tuple[float, ...]


@dataclass(frozen=True)
class EnergyLevel:
    """A quantized energy with its method tag and quantization residual."""

    energy: float
    method: str
    residual: float
    n_r: int | None = None
    l: int | None = None
    n_total: int | None = None
    k: int | None = None


def default_domain(spec: Potential, units: UnitsContext) -> tuple[float, float]:
    """Radial scan window (inner, outer) for single-well problems."""
    if isinstance(spec, TabulatedPotential):
        return spec.support()
    s = spec.r_scale(units)
    return (_SCAN_INNER * s, _SCAN_OUTER * s)


class P2Evaluator:
    """Binds (potential, M2, units) and dispatches to the kernel backend.

    Built-in potentials go through the baked (kind, a0, a1, a2) kernel path;
    tabulated ones fall back to generic callable quadrature.
    """

    def __init__(self, spec: Potential, m2: float, units: UnitsContext,
                 backend=None):
        if m2 < 0:
            raise ParameterError(f"M2 must be >= 0, got {m2}")
        self.spec = spec
        self.m2 = float(m2)
        self.units = units
        self.two_m = 2.0 * units.mass
        self.kernels = backend if backend is not None else _backend.kernels
        self.kind = spec.kernel_id
        self.params = (spec.kernel_params(units)
                       if self.kind != KIND_TABULATED else None)

    def p2(self, energy: float, r):
        """Effective squared momentum on a grid (vectorized)."""
        if self.kind != KIND_TABULATED:
            return self.kernels.effective_p2_array(
                self.kind, *self.params, self.two_m, energy, self.m2, r)
        r = np.asarray(r, dtype=float)
        out = self.two_m * (energy - self.spec.values(r, self.units))
        if self.m2 != 0.0:
            out = out - self.m2 / (r * r)
        return out

    def v_eff(self, r):
        """V(r) + M2/(2 m r**2)."""
        r = np.asarray(r, dtype=float)
        out = np.asarray(self.spec.values(r, self.units), dtype=float)
        if self.m2 != 0.0:
            out = out + self.m2 / (self.two_m * r * r)
        return out

    def action(self, energy: float, a: float, b: float,
               rel_tol: float = 1e-12) -> float:
        """Adaptive integral of sqrt(max(p2, 0)) over [a, b]."""
        if self.kind != KIND_TABULATED:
            def segment(order: int) -> float:
                x, w = gauss_legendre_nodes(order)
                return self.kernels.action_segment(
                    self.kind, *self.params, self.two_m, energy, self.m2,
                    a, b, x, w)
            value, _ = adaptive_refine(segment, rel_tol)
            return value
        value, _ = action_between(lambda r: self.p2(energy, r), a, b, rel_tol)
        return value

    def refine_tp(self, energy: float, lo: float, hi: float,
                  abs_tol: float) -> float:
        if self.kind != KIND_TABULATED:
            return self.kernels.refine_turning_point(
                self.kind, *self.params, self.two_m, energy, self.m2,
                lo, hi, abs_tol)
        f = lambda r: float(self.p2(energy, np.asarray([r]))[0])
        flo, fhi = f(lo), f(hi)
        if flo == 0.0:
            return lo
        if fhi == 0.0:
            return hi
        if (flo > 0.0) == (fhi > 0.0):
            raise ValueError(f"no sign change of p2 in [{lo}, {hi}]")
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if hi - lo <= abs_tol or mid <= lo or mid >= hi:
                break
            fmid = f(mid)
            if fmid == 0.0:
                return mid
            if (fmid > 0.0) == (flo > 0.0):
                lo, flo = mid, fmid
            else:
                hi = mid
        return 0.5 * (lo + hi)


def _scan_grid(domain: tuple[float, float], r_scale: float,
               n_scan: int) -> np.ndarray:
    """Log-spaced scan points that avoid r = 0 from both sides."""
    lo, hi = domain
    if not hi > lo:
        raise ParameterError(f"empty scan domain ({lo}, {hi})")
    inner = _SCAN_INNER * r_scale
    parts = []
    if lo < 0:
        neg_edge = min(hi, -inner)
        if neg_edge > lo:
            parts.append(-np.geomspace(-lo, -neg_edge, n_scan))
    pos_lo = max(lo, inner)
    if hi > pos_lo:
        parts.append(np.geomspace(pos_lo, hi, n_scan))
    if not parts:
        raise ParameterError(f"scan domain ({lo}, {hi}) excludes all r != 0")
    return np.concatenate(parts)


def _intervals_from_scan(ev: P2Evaluator, energy: float, grid: np.ndarray,
                         tp_tol: float) -> list[tuple[float, float]]:
    p2 = np.asarray(ev.p2(energy, grid), dtype=float)
    pos = p2 > 0.0
    if not np.any(pos):
        return []
    intervals = []
    starts = list(np.flatnonzero(pos & ~np.roll(pos, 1)))
    if pos[0]:
        starts = [0] + [s for s in starts if s != 0]
    ends = list(np.flatnonzero(pos & ~np.roll(pos, -1)))
    if pos[-1] and (len(ends) == 0 or ends[-1] != len(pos) - 1):
        ends.append(len(pos) - 1)
    for s, e in zip(starts, ends):
        # clamp to the scan edge when the run touches it; otherwise polish
        if s == 0:
            left = float(grid[0])
        else:
            left = ev.refine_tp(energy, float(grid[s - 1]), float(grid[s]),
                                tp_tol)
        if e == len(grid) - 1:
            right = float(grid[-1])
        else:
            right = ev.refine_tp(energy, float(grid[e]), float(grid[e + 1]),
                                 tp_tol)
        if right > left:
            intervals.append((left, right))
    return intervals


def find_turning_structure(spec: Potential, m2: float, energy: float,
                           units: UnitsContext = UnitsContext(),
                           domain: tuple[float, float] | None = None,
                           n_scan: int = _SCAN_POINTS) -> TurningStructure:
    """Locate all classically allowed intervals of p2 at the given energy.

    Scans n_scan log-spaced points per side of r = 0 inside `domain`
    (default: the potential's single-well window), then bisects each sign
    change down to 1e-12 of the coordinate scale.

    Raises NoClassicalRegionError when no interval exists, which signals an
    energy below the effective-potential minimum or above dissociation.
    """
    ev = P2Evaluator(spec, m2, units)
    if domain is None:
        domain = default_domain(spec, units)
    scale = spec.r_scale(units)
    grid = _scan_grid(domain, scale, n_scan)
    tp_tol = 1e-12 * max(scale, abs(domain[0]), abs(domain[1]))
    intervals = _intervals_from_scan(ev, energy, grid, tp_tol)
    if not intervals:
        raise NoClassicalRegionError(
            f"no classically allowed region at E={energy!r} "
            f"(below the effective minimum or above dissociation)"
        )
    return TurningStructure(energy=energy, intervals=tuple(intervals))


def phase_integral(spec: Potential, m2: float, energy: float,
                   units: UnitsContext, structure: TurningStructure,
                   rel_tol: float = 1e-12) -> PhaseIntegral:
    """Sum of sqrt(p2) integrals over the structure's intervals."""
    ev = P2Evaluator(spec, m2, units)
    parts = tuple(ev.action(energy, a, b, rel_tol)
                  for a, b in structure.intervals)
    return PhaseIntegral(value=float(sum(parts)), energy=energy,
                         interval_values=parts)


class _ActionCurve:
    """Total action vs energy for one (potential, M2) problem."""

    def __init__(self, ev: P2Evaluator, domain: tuple[float, float],
                 rel_tol_quad: float, n_scan: int = _SCAN_POINTS):
        self.ev = ev
        self.domain = domain
        self.rel_tol_quad = rel_tol_quad
        self.n_scan = n_scan
        scale = ev.spec.r_scale(ev.units)
        self.grid = _scan_grid(domain, scale, n_scan)
        self.tp_tol = 1e-12 * max(scale, abs(domain[0]), abs(domain[1]))

    def intervals(self, energy: float, n_scan: int | None = None):
        grid = self.grid
        if n_scan is not None and n_scan != self.n_scan:
            scale = self.ev.spec.r_scale(self.ev.units)
            grid = _scan_grid(self.domain, scale, n_scan)
        return _intervals_from_scan(self.ev, energy, grid, self.tp_tol)

    def total(self, energy: float) -> tuple[float, int]:
        """(sum of cut actions, cut count); (0, 0) when nothing is allowed."""
        ivals = self.intervals(energy)
        if not ivals:
            return 0.0, 0
        value = sum(self.ev.action(energy, a, b, self.rel_tol_quad)
                    for a, b in ivals)
        return value, len(ivals)

    def v_eff_min(self) -> float:
        """Global effective-potential minimum over the scan grid, polished."""
        vals = np.asarray(self.ev.v_eff(self.grid), dtype=float)
        i = int(np.nanargmin(vals))
        lo = self.grid[max(i - 1, 0)]
        hi = self.grid[min(i + 1, len(self.grid) - 1)]
        best = float(vals[i])
        if hi > lo:
            res = minimize_scalar(
                lambda r: float(self.ev.v_eff(np.asarray([r]))[0]),
                bounds=(float(lo), float(hi)), method="bounded",
                options={"xatol": 1e-13 * max(abs(lo), abs(hi), 1.0)})
            if np.isfinite(res.fun):
                best = min(best, float(res.fun))
        return best


def _auto_bracket(curve: _ActionCurve, target: float,
                  confining: bool) -> tuple[float, float]:
    """Energies (E_lo, E_hi) with action(E_lo) < target < action(E_hi)."""
    vmin = curve.v_eff_min()
    if not math.isfinite(vmin):
        raise NoBoundStateError("effective potential has no finite minimum")
    e_lo = vmin + 1e-12 * abs(vmin) + 1e-300
    if confining:
        gap = max(abs(vmin), 1.0)
        e_hi = vmin + gap
        for _ in range(200):
            value, _k = curve.total(e_hi)
            if value > target:
                return e_lo, e_hi
            gap *= 4.0
            e_hi = vmin + gap
        raise RootConvergenceError(
            "failed to bracket the quantization energy from above")
    # non-confining: dissociation sits at V(inf) = 0 for the analytic
    # wells; a tabulated well is only trustworthy up to its outer edge,
    # beyond which the turning point would leave the sampled support
    ceiling = 0.0
    if isinstance(curve.ev.spec, TabulatedPotential):
        ceiling = float(curve.ev.v_eff(np.asarray([curve.domain[1]]))[0])
    e_hi = ceiling - 1e-15 * max(abs(vmin), abs(ceiling), 1.0)
    if e_hi <= e_lo:
        raise NoBoundStateError(
            f"effective well [{vmin!r}, {ceiling!r}) is too shallow to "
            f"bracket")
    value, _k = curve.total(e_hi)
    if value <= target:
        raise NoBoundStateError(
            f"action at the dissociation threshold is {value!r} < "
            f"target {target!r}; no such bound state")
    return e_lo, e_hi


def _solve_action_equals(curve: _ActionCurve, target: float,
                         e_lo: float, e_hi: float,
                         tol_root: float) -> tuple[float, float]:
    """Root of total_action(E) = target by bisection plus secant polish."""
    f_lo = curve.total(e_lo)[0] - target
    f_hi = curve.total(e_hi)[0] - target
    if f_lo > 0.0 or f_hi < 0.0:
        raise NoBoundStateError(
            f"bracket ({e_lo!r}, {e_hi!r}) does not enclose the "
            f"quantization target")
    a, fa, b, fb = e_lo, f_lo, e_hi, f_hi
    mid, f_mid = a, fa
    for _ in range(200):
        mid = 0.5 * (a + b)
        if mid <= a or mid >= b:
            break
        f_mid = curve.total(mid)[0] - target
        if abs(f_mid) <= tol_root:
            break
        if f_mid > 0.0:
            b, fb = mid, f_mid
        else:
            a, fa = mid, f_mid
        if b - a <= 1e-15 * max(abs(a), abs(b), 1.0):
            break
    energy, res = mid, f_mid
    # secant polish from the bracket ends; keep the best in-bracket value
    x0, f0, x1, f1 = a, fa, b, fb
    for _ in range(12):
        if f1 == f0:
            break
        x2 = x1 - f1 * (x1 - x0) / (f1 - f0)
        if not (a <= x2 <= b):
            break
        f2 = curve.total(x2)[0] - target
        x0, f0, x1, f1 = x1, f1, x2, f2
        if abs(f2) < abs(res):
            energy, res = x2, f2
        if abs(f2) <= tol_root * 1e-3:
            break
    if abs(res) > tol_root:
        raise RootConvergenceError(
            f"quantization residual {res!r} above tolerance {tol_root!r}")
    return energy, res


def quantize_2tp(spec: Potential, m2: float, n_r: int,
                 units: UnitsContext = UnitsContext(),
                 e_bracket: tuple[float, float] | None = None,
                 *, domain: tuple[float, float] | None = None,
                 rel_tol_quad: float = 1e-12,
                 tol_root: float = 1e-9) -> EnergyLevel:
    """Solve the two-turning-point condition: action = pi hbar (n_r + 1/2).

    The energy bracket defaults to (effective minimum, dissociation) and is
    grown geometrically for confining potentials; an explicit e_bracket is
    used as given when it encloses the root and replaced otherwise.
    Single-well semantics: all allowed intervals found are summed, which for
    the built-in potentials means exactly one.
    """
    if n_r < 0:
        raise ParameterError(f"n_r must be >= 0, got {n_r}")
    ev = P2Evaluator(spec, m2, units)
    if domain is None:
        domain = default_domain(spec, units)
    curve = _ActionCurve(ev, domain, rel_tol_quad)
    target = math.pi * units.hbar * (n_r + 0.5)
    tol = tol_root * math.pi * units.hbar
    bracket = None
    if e_bracket is not None:
        e_lo, e_hi = e_bracket
        if (curve.total(e_lo)[0] - target) < 0.0 < (curve.total(e_hi)[0] - target):
            bracket = (e_lo, e_hi)
    if bracket is None:
        bracket = _auto_bracket(curve, target, spec.confining)
    energy, res = _solve_action_equals(curve, target, *bracket, tol)
    return EnergyLevel(energy=energy, method="quadrature", residual=res,
                       n_r=n_r, k=1)


def quantize_multiwell(spec: Potential, m2: float, n_total: int, k: int,
                       units: UnitsContext = UnitsContext(),
                       domain: tuple[float, float] = (-10.0, 10.0),
                       *, rel_tol_quad: float = 1e-12,
                       tol_root: float = 1e-9) -> EnergyLevel:
    """Solve the 2k-turning-point condition: action = pi hbar (N + k/2).

    The Maslov index mu = 2k counts one wavefunction reflection per wall.
    The root is found on the continuous total-action curve; the returned
    energy must then actually carry k real cuts, otherwise the remaining
    cuts are complex (as for Morse at bound energies) and a
    StructureMismatchError reports how many were found.
    """
    if n_total < 0:
        raise ParameterError(f"N_total must be >= 0, got {n_total}")
    if k < 1:
        raise ParameterError(f"cut count k must be >= 1, got {k}")
    ev = P2Evaluator(spec, m2, units)
    curve = _ActionCurve(ev, domain, rel_tol_quad)
    target = math.pi * units.hbar * (n_total + 0.5 * k)
    tol = tol_root * math.pi * units.hbar
    bracket = _auto_bracket(curve, target, spec.confining)
    energy, res = _solve_action_equals(curve, target, *bracket, tol)
    found = len(curve.intervals(energy))
    if found != k:
        # re-scan at doubled resolution before concluding the cut is absent
        found2 = len(curve.intervals(energy, n_scan=2 * curve.n_scan))
        if found2 != k:
            raise StructureMismatchError(
                f"quantized energy {energy!r} carries {found2} real "
                f"cut(s), not the requested {k}; the remaining turning "
                f"points are off the real axis", found=found2)
        found = found2
    return EnergyLevel(energy=energy, method="multiwell", residual=res,
                       n_total=n_total, k=found)
