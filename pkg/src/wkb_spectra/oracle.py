"""Independent finite-difference reference for the quasiclassical results.

Diagonalizes the reduced radial equation

    -(hbar**2/2m) u'' + [V(r) + C/(2 m r**2)] u = E u,   u(r_min) = u(r_max) = 0

with the standard three-point second difference, where the centrifugal
coefficient C is either the textbook l(l+1) hbar**2 or the quasiclassical
(l + 1/2)**2 hbar**2. Comparing the two variants against closed forms and
quadrature is what turns the exactness claims into numbers.

Default grids are uniform, with boxes sized from each potential's own
length and energy scales; right-sizing the box is what buys resolution
where the states live. One Richardson step from the (P, 2P) pair is built
in. Logarithmic spacing (r = e^x, u = e^{x/2} w, scaled by the e^{2x}
weight so the matrix stays symmetric tridiagonal) is available for
wide-dynamic-range experiments, but note the absolute-accuracy floor of
the scaled form, roughly eps * hbar^2 / (2 m r_min^2 h_x^2): tridiagonal
eigensolvers carry errors of order eps times the matrix norm, which grows
as r_min shrinks. Uniform grids do not have that problem.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import trapezoid
from scipy.linalg import eigh_tridiagonal

from .core import (
    Coulomb,
    Hulthen,
    Morse,
    Potential,
    TabulatedPotential,
    UnitsContext,
)
from .errors import DomainTooSmallError, NoBoundStateError, ParameterError
from .quantizer import quantize_2tp
from .spectra import (
    VARIANT_MORSE_NO_CENTRIFUGAL,
    VARIANT_MORSE_WITH_M,
    VARIANT_STANDARD,
    ClosedFormSpectrum,
    hulthen_energy,
)

__all__ = [
    "ORACLE_LL1",
    "ORACLE_LANGER",
    "RadialGrid",
    "OracleResult",
    "ComparisonRow",
    "default_grid",
    "diagonalize_radial",
    "compare_methods",
]

ORACLE_LL1 = "Ll1"
ORACLE_LANGER = "LangerHalfSquared"

_OUTER_DECAY = 1e-10   # eigenfunction tail bound at r_max
_INNER_DECAY = 1e-2    # regularity bound at r_min (power-law, not exponential)


@dataclass(frozen=True)
class RadialGrid:
    """Dirichlet box (r_min, r_max) with P interior points."""

    r_min: float
    r_max: float
    points: int
    spacing: str = "uniform"

    def __post_init__(self):
        if not (0 < self.r_min < self.r_max):
            raise ParameterError(
                f"need 0 < r_min < r_max, got ({self.r_min}, {self.r_max})")
        if self.points < 200:
            raise ParameterError(f"need at least 200 points, got {self.points}")
        if self.spacing not in ("uniform", "log"):
            raise ParameterError(f"spacing must be uniform or log, "
                                 f"got {self.spacing!r}")

    def interior(self, refine: int = 1) -> np.ndarray:
        """Interior nodes; refine=2 halves the step with the same box."""
        n = self.points * refine + (refine - 1)
        if self.spacing == "uniform":
            return np.linspace(self.r_min, self.r_max, n + 2)[1:-1]
        x = np.linspace(math.log(self.r_min), math.log(self.r_max), n + 2)
        return np.exp(x[1:-1])


@dataclass(frozen=True)
class OracleResult:
    """Lowest eigenvalues of the discrete radial operator."""

    eigenvalues: np.ndarray
    centrifugal_variant: str
    grid: RadialGrid
    refinement_estimate: np.ndarray
    raw_coarse: np.ndarray | None = None
    raw_fine: np.ndarray | None = None
    richardson: bool = True


def _centrifugal_coefficient(l: int, variant: str, units: UnitsContext) -> float:
    h2 = units.hbar * units.hbar
    if variant == ORACLE_LL1:
        return l * (l + 1) * h2
    if variant == ORACLE_LANGER:
        return (l + 0.5) ** 2 * h2
    raise ParameterError(f"unknown centrifugal variant {variant!r}")


def _solve_box(spec: Potential, c_coef: float, units: UnitsContext,
               grid: RadialGrid, n_levels: int, refine: int):
    """Eigenvalues + boundary-decay metrics on one grid.

    The outer metric is the WKB forbidden-region estimate
    exp(-integral sqrt(2m(V_eff - E_top)) dr / hbar) from the outermost
    turning point of the shallowest requested level: raw eigenvector tails
    sit on the eigensolver's noise floor (~1e-7 of the peak), far above the
    1e-10 contract, while the action estimate measures the actual decay.
    The inner metric extrapolates the first interior node's relative
    amplitude down to r_min by the regular solution's leading power r^s,
    s = (1 + sqrt(1 + 4 C/hbar^2))/2 from the indicial equation of the
    centrifugal term; on a uniform grid the first node sits a full step
    away from the wall, so the raw value there says nothing about r_min.
    """
    hbar, mass = units.hbar, units.mass
    r = grid.interior(refine)
    v = np.asarray(spec.values(r, units), dtype=float)
    if c_coef != 0.0:
        v = v + c_coef / (2.0 * mass * r * r)
    n = r.size
    sel = (0, n_levels - 1)
    if grid.spacing == "uniform":
        h = (grid.r_max - grid.r_min) / (n + 1)
        kin = hbar * hbar / (2.0 * mass * h * h)
        diag = 2.0 * kin + v
        off = np.full(n - 1, -kin)
        evals, evecs = eigh_tridiagonal(diag, off, select="i",
                                        select_range=sel)
        u = evecs
    else:
        x = np.log(r)
        h = (math.log(grid.r_max) - math.log(grid.r_min)) / (n + 1)
        # operator in w(x): A w = E B w with B = (2m/hbar^2) e^{2x};
        # scaling as B^-1/2 A B^-1/2 keeps it symmetric tridiagonal
        b = (2.0 * mass / (hbar * hbar)) * np.exp(2.0 * x)
        a_diag = 2.0 / (h * h) + 0.25 + (2.0 * mass / (hbar * hbar)) * \
            np.exp(2.0 * x) * v
        a_off = np.full(n - 1, -1.0 / (h * h))
        diag = a_diag / b
        off = a_off / np.sqrt(b[:-1] * b[1:])
        evals, evecs = eigh_tridiagonal(diag, off, select="i",
                                        select_range=sel)
        # back to u = e^{x/2} w, with w = B^-1/2 (scaled vector)
        u = np.exp(0.5 * x)[:, None] * (evecs / np.sqrt(b)[:, None])
    amax = np.max(np.abs(u), axis=0)
    amax[amax == 0.0] = 1.0
    s_ind = 0.5 * (1.0 + math.sqrt(1.0 + 4.0 * c_coef / (hbar * hbar)))
    inner = float(np.max(np.abs(u[0, :]) / amax)) * \
        (grid.r_min / float(r[0])) ** s_ind
    e_top = float(evals[-1])
    forbidden = 2.0 * mass * (v - e_top)
    allowed = np.flatnonzero(forbidden < 0.0)
    if allowed.size == 0 or allowed[-1] == n - 1:
        outer = 1.0  # no forbidden outer region inside the box
    else:
        i0 = int(allowed[-1])
        kappa = np.sqrt(np.maximum(forbidden[i0:], 0.0))
        action = float(trapezoid(kappa, r[i0:]))
        outer = math.exp(-min(action / hbar, 700.0))
    return np.asarray(evals, dtype=float), inner, outer


def diagonalize_radial(spec: Potential, l: int, centrifugal_variant: str,
                       units: UnitsContext = UnitsContext(),
                       grid: RadialGrid | None = None,
                       n_levels: int = 4,
                       richardson: bool = True) -> OracleResult:
    """Lowest n_levels eigenvalues at fixed l, one Richardson step included.

    The box is validated post hoc: eigenfunctions must fall below 1e-10 of
    their peak at r_max (widened once if not) and below 1e-2 at r_min
    (shrunk once if not; the inner bound is a power-law regularity check,
    not an exponential tail). A second failure raises DomainTooSmallError.
    """
    if l < 0:
        raise ParameterError(f"l must be >= 0, got {l}")
    if n_levels < 1:
        raise ParameterError(f"n_levels must be >= 1, got {n_levels}")
    c_coef = _centrifugal_coefficient(l, centrifugal_variant, units)
    if grid is None:
        grid = default_grid(spec, units, l, n_levels)
    widened = shrunk = False
    while True:
        coarse, inner_c, outer_c = _solve_box(spec, c_coef, units, grid,
                                              n_levels, refine=1)
        if outer_c > _OUTER_DECAY:
            if widened:
                raise DomainTooSmallError(
                    f"tail |u(r_max)|/max|u| = {outer_c!r} > {_OUTER_DECAY!r} "
                    f"even after widening to r_max = {grid.r_max!r}")
            widened = True
            grid = RadialGrid(grid.r_min, 2.0 * grid.r_max,
                              grid.points * (2 if grid.spacing == "uniform"
                                             else 1),
                              grid.spacing)
            continue
        if inner_c > _INNER_DECAY:
            if shrunk:
                raise DomainTooSmallError(
                    f"inner value |u(r_min)|/max|u| = {inner_c!r} > "
                    f"{_INNER_DECAY!r} even after shrinking to "
                    f"r_min = {grid.r_min!r}")
            shrunk = True
            grid = RadialGrid(grid.r_min / 4.0, grid.r_max, grid.points,
                              grid.spacing)
            continue
        break
    if not richardson:
        return OracleResult(
            eigenvalues=coarse, centrifugal_variant=centrifugal_variant,
            grid=grid, refinement_estimate=np.zeros_like(coarse),
            raw_coarse=coarse, raw_fine=None, richardson=False)
    fine, _, _ = _solve_box(spec, c_coef, units, grid, n_levels, refine=2)
    extrap = (4.0 * fine - coarse) / 3.0
    return OracleResult(
        eigenvalues=extrap, centrifugal_variant=centrifugal_variant,
        grid=grid, refinement_estimate=np.abs(fine - coarse),
        raw_coarse=coarse, raw_fine=fine, richardson=True)


def default_grid(spec: Potential, units: UnitsContext, l: int,
                 n_levels: int) -> RadialGrid:
    """Uniform box sized to hold the requested levels plus their tails.

    r_min is pushed to 1e-9 of the natural length: on a uniform grid that
    costs nothing (the first node sits at ~h regardless) and keeps the
    hard-wall eigenvalue shift, which scales linearly in r_min for s-wave
    states, far below the extrapolated discretization error.
    """
    s = spec.r_scale(units)
    n_top = n_levels + l + 1
    hbar, mass = units.hbar, units.mass
    if isinstance(spec, TabulatedPotential):
        lo, hi = spec.support()
        return RadialGrid(lo, hi, 4000, "uniform")
    if isinstance(spec, Coulomb):
        # size ~ 2 N^2 s plus ~40 s / kappa_N of forbidden tail, kappa_N = 1/N
        r_max = (2.0 * n_top * n_top + 40.0 * n_top + 20.0) * s
    elif isinstance(spec, Hulthen):
        try:
            e_top = hulthen_energy(spec.v0, spec.r0, mass, hbar,
                                   n_levels - 1, l)
            kappa = math.sqrt(2.0 * mass * abs(e_top)) / hbar
            r_t = spec.r0 * math.log1p(spec.v0 / abs(e_top))
            r_max = r_t + 34.0 / kappa
        except NoBoundStateError:
            # more levels requested than the well holds; leave a wide box
            # and let the decay check fail honestly
            r_max = 60.0 * n_top * s
    elif isinstance(spec, Morse):
        r_max = 40.0 * s
    else:
        # confining oscillator-like wells
        r_max = 3.0 * s * math.sqrt(4.0 * n_top + 3.0)
    return RadialGrid(1e-9 * s, r_max, 4000, "uniform")


@dataclass(frozen=True)
class ComparisonRow:
    """One n_r row of the method-comparison table; None marks a method that
    errored (note says why)."""

    n_r: int
    l: int
    closed: float | None
    quadrature: float | None
    oracle_ll1: float | None
    oracle_langer: float | None
    closed_with_m: float | None = None
    notes: str = ""

    def deltas(self) -> dict[str, float | None]:
        def diff(a, b):
            return (a - b) if (a is not None and b is not None) else None
        return {
            "quadrature_minus_closed": diff(self.quadrature, self.closed),
            "oracle_ll1_minus_closed": diff(self.oracle_ll1, self.closed),
            "oracle_langer_minus_closed": diff(self.oracle_langer, self.closed),
            "closed_with_m_minus_closed": diff(self.closed_with_m, self.closed),
        }


def compare_methods(spec: Potential, l: int, n_r_range,
                    units: UnitsContext = UnitsContext(),
                    grid: RadialGrid | None = None) -> list[ComparisonRow]:
    """Closed form vs quadrature vs both oracle variants, one row per n_r.

    Reporting only: no tolerance is asserted here. Member errors are caught
    per cell and recorded in the row's notes.
    """
    n_r_list = sorted(set(int(n) for n in n_r_range))
    if not n_r_list or n_r_list[0] < 0:
        raise ParameterError("n_r_range must contain non-negative integers")
    n_levels = n_r_list[-1] + 1
    m2_langer = (l + 0.5) ** 2 * units.hbar**2

    is_morse = isinstance(spec, Morse)
    closed = None
    notes_global: list[str] = []
    try:
        if is_morse:
            closed = ClosedFormSpectrum(spec, VARIANT_MORSE_NO_CENTRIFUGAL,
                                        units) if l == 0 else None
            if l != 0:
                notes_global.append("closed: no-centrifugal form needs l=0")
        elif isinstance(spec, TabulatedPotential):
            notes_global.append("closed: none for tabulated potentials")
        else:
            closed = ClosedFormSpectrum(spec, VARIANT_STANDARD, units)
    except ParameterError as exc:
        notes_global.append(f"closed: {exc}")
    closed_alt = (ClosedFormSpectrum(spec, VARIANT_MORSE_WITH_M, units)
                  if is_morse else None)

    oracle_vals: dict[str, np.ndarray | None] = {}
    oracle_notes: list[str] = []
    for variant in (ORACLE_LL1, ORACLE_LANGER):
        try:
            res = diagonalize_radial(spec, l, variant, units, grid=grid,
                                     n_levels=n_levels)
            oracle_vals[variant] = res.eigenvalues
        except Exception as exc:  # report-only table: keep the column empty
            oracle_vals[variant] = None
            oracle_notes.append(f"oracle {variant}: {exc}")

    rows = []
    for n_r in n_r_list:
        notes = list(notes_global) + list(oracle_notes)
        e_closed = None
        if closed is not None:
            try:
                e_closed = closed.energy(n_r, l)
            except Exception as exc:
                notes.append(f"closed: {exc}")
        e_alt = None
        if closed_alt is not None:
            try:
                e_alt = closed_alt.energy(n_r, l)
            except Exception as exc:
                notes.append(f"closed with-M: {exc}")
        try:
            e_quad = quantize_2tp(spec, m2_langer, n_r, units).energy
        except Exception as exc:
            e_quad = None
            notes.append(f"quadrature: {exc}")
        row = ComparisonRow(
            n_r=n_r, l=l, closed=e_closed, quadrature=e_quad,
            oracle_ll1=(None if oracle_vals[ORACLE_LL1] is None
                        else float(oracle_vals[ORACLE_LL1][n_r])),
            oracle_langer=(None if oracle_vals[ORACLE_LANGER] is None
                           else float(oracle_vals[ORACLE_LANGER][n_r])),
            closed_with_m=e_alt,
            notes="; ".join(notes))
        rows.append(row)
    return rows
