"""Pure numpy kernels: potential/p2 evaluation on grids, phase-integral
segments and turning-point bisection.

Mirror of the compiled extension in _kernels.pyx; _backend picks one at
import. Potentials are baked to three floats (a0, a1, a2) by the kind ids
in core so the hot loops never touch Python objects.

    kind 0  coulomb      V = -a0 / r
    kind 1  oscillator   V = a0 r**2            (a0 = m omega**2 / 2)
    kind 2  hulthen      V = -a0 / expm1(a1 r)  (a1 = 1/r0)
    kind 3  morse        V = a0 (y**2 - 2y), y = exp(-a1 (r - a2))
    kind 4  linear+osc   V = a0 r + a1 r**2     (a1 = m omega**2 / 2)
"""

from __future__ import annotations

import numpy as np

COMPILED = False

_HALF_PI = 0.5 * np.pi


def potential_array(kind, a0, a1, a2, r):
    r = np.asarray(r, dtype=float)
    if kind == 0:
        return -a0 / r
    if kind == 1:
        return a0 * r * r
    if kind == 2:
        with np.errstate(over="ignore", divide="ignore"):
            return -a0 / np.expm1(a1 * r)
    if kind == 3:
        with np.errstate(over="ignore"):
            y = np.exp(-a1 * (r - a2))
            return a0 * (y * y - 2.0 * y)
    if kind == 4:
        return a0 * r + a1 * r * r
    raise ValueError(f"unknown kernel kind {kind}")


def effective_p2_array(kind, a0, a1, a2, two_m, energy, m2, r):
    """two_m (energy - V(r)) - m2 / r**2 on a grid that avoids r = 0."""
    r = np.asarray(r, dtype=float)
    v = potential_array(kind, a0, a1, a2, r)
    with np.errstate(invalid="ignore"):
        out = two_m * (energy - v)
        if m2 != 0.0:
            out = out - m2 / (r * r)
    return out


def action_segment(kind, a0, a1, a2, two_m, energy, m2, a, b, x, w):
    """integral_a^b sqrt(max(p2, 0)) dr at fixed order via the sin map.

    x, w are Gauss-Legendre nodes/weights on (-1, 1).
    """
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    u = _HALF_PI * np.asarray(x, dtype=float)
    r = mid + half * np.sin(u)
    p2 = effective_p2_array(kind, a0, a1, a2, two_m, energy, m2, r)
    np.maximum(p2, 0.0, out=p2)
    np.nan_to_num(p2, copy=False)
    return float(np.dot(w, np.sqrt(p2) * (_HALF_PI * half * np.cos(u))))


def _p2_scalar(kind, a0, a1, a2, two_m, energy, m2, r):
    return float(effective_p2_array(kind, a0, a1, a2, two_m, energy, m2,
                                    np.asarray([r]))[0])


def refine_turning_point(kind, a0, a1, a2, two_m, energy, m2, lo, hi, abs_tol):
    """Bisect the sign change of p2 inside [lo, hi] down to width abs_tol."""
    flo = _p2_scalar(kind, a0, a1, a2, two_m, energy, m2, lo)
    fhi = _p2_scalar(kind, a0, a1, a2, two_m, energy, m2, hi)
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
        fmid = _p2_scalar(kind, a0, a1, a2, two_m, energy, m2, mid)
        if fmid == 0.0:
            return mid
        if (fmid > 0.0) == (flo > 0.0):
            lo, flo = mid, fmid
        else:
            hi = mid
    return 0.5 * (lo + hi)
