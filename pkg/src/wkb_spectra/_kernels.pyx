# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels, same contract as _kernels_py but with C loops.

Keep the two implementations branch-for-branch identical: the backend
equivalence tests compare them at near machine precision.
"""

from libc.math cimport sin, cos, sqrt, exp, expm1

import numpy as np

cimport numpy as cnp

cnp.import_array()

COMPILED = True

cdef double HALF_PI = 1.5707963267948966


cdef inline double _v(int kind, double a0, double a1, double a2, double r) noexcept nogil:
    cdef double y
    if kind == 0:
        return -a0 / r
    elif kind == 1:
        return a0 * r * r
    elif kind == 2:
        return -a0 / expm1(a1 * r)
    elif kind == 3:
        y = exp(-a1 * (r - a2))
        return a0 * (y * y - 2.0 * y)
    else:
        return a0 * r + a1 * r * r


cdef inline double _p2(int kind, double a0, double a1, double a2,
                       double two_m, double energy, double m2, double r) noexcept nogil:
    cdef double out = two_m * (energy - _v(kind, a0, a1, a2, r))
    if m2 != 0.0:
        out -= m2 / (r * r)
    return out


cdef void _check_kind(int kind) except *:
    if kind < 0 or kind > 4:
        raise ValueError(f"unknown kernel kind {kind}")


def potential_array(int kind, double a0, double a1, double a2, r):
    _check_kind(kind)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] rr = \
        np.ascontiguousarray(np.atleast_1d(r), dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty_like(rr)
    cdef Py_ssize_t i, n = rr.shape[0]
    with nogil:
        for i in range(n):
            out[i] = _v(kind, a0, a1, a2, rr[i])
    return out


def effective_p2_array(int kind, double a0, double a1, double a2,
                       double two_m, double energy, double m2, r):
    _check_kind(kind)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] rr = \
        np.ascontiguousarray(np.atleast_1d(r), dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty_like(rr)
    cdef Py_ssize_t i, n = rr.shape[0]
    with nogil:
        for i in range(n):
            out[i] = _p2(kind, a0, a1, a2, two_m, energy, m2, rr[i])
    return out


def action_segment(int kind, double a0, double a1, double a2,
                   double two_m, double energy, double m2,
                   double a, double b, x, w):
    _check_kind(kind)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xx = \
        np.ascontiguousarray(x, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ww = \
        np.ascontiguousarray(w, dtype=np.float64)
    cdef double mid = 0.5 * (a + b)
    cdef double half = 0.5 * (b - a)
    cdef double acc = 0.0, u, rr, p2
    cdef Py_ssize_t i, n = xx.shape[0]
    with nogil:
        for i in range(n):
            u = HALF_PI * xx[i]
            rr = mid + half * sin(u)
            p2 = _p2(kind, a0, a1, a2, two_m, energy, m2, rr)
            if p2 != p2 or p2 < 0.0:
                p2 = 0.0
            acc += ww[i] * sqrt(p2) * HALF_PI * half * cos(u)
    return acc


def refine_turning_point(int kind, double a0, double a1, double a2,
                         double two_m, double energy, double m2,
                         double lo, double hi, double abs_tol):
    _check_kind(kind)
    cdef double flo = _p2(kind, a0, a1, a2, two_m, energy, m2, lo)
    cdef double fhi = _p2(kind, a0, a1, a2, two_m, energy, m2, hi)
    cdef double mid, fmid
    cdef int it
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0.0) == (fhi > 0.0):
        raise ValueError(f"no sign change of p2 in [{lo}, {hi}]")
    for it in range(200):
        mid = 0.5 * (lo + hi)
        if hi - lo <= abs_tol or mid <= lo or mid >= hi:
            break
        fmid = _p2(kind, a0, a1, a2, two_m, energy, m2, mid)
        if fmid == 0.0:
            return mid
        if (fmid > 0.0) == (flo > 0.0):
            lo = mid
            flo = fmid
        else:
            hi = mid
    return 0.5 * (lo + hi)
