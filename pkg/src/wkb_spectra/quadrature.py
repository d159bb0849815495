"""Adaptive Gauss-Legendre quadrature for phase integrals.

The integrand sqrt(p2(r)) vanishes like sqrt(r - a) and sqrt(b - r) at the
turning points, so plain quadrature converges slowly. Substituting

    r = (a + b)/2 + ((b - a)/2) sin u,   u in (-pi/2, pi/2)

gives dr = ((b - a)/2) cos u du, and the cos factor cancels both endpoint
zeros: the mapped integrand is analytic whenever p2 is, and Gauss-Legendre
then converges geometrically in the node count.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import QuadratureConvergenceError

__all__ = ["gauss_legendre_nodes", "adaptive_refine", "action_between"]

_ORDER_START = 16
_ORDER_MAX = 16384


@lru_cache(maxsize=32)
def gauss_legendre_nodes(order: int):
    """Nodes and weights on (-1, 1), cached per order."""
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def adaptive_refine(segment, rel_tol: float = 1e-12, *, order_start: int = _ORDER_START,
                    order_max: int = _ORDER_MAX):
    """Double the order of `segment(order)` until successive values agree.

    Returns (value, order_used). Raises QuadratureConvergenceError when the
    order cap is hit before |I_2n - I_n| <= rel_tol |I_2n| + 1e-15.
    """
    order = order_start
    prev = segment(order)
    while order < order_max:
        order *= 2
        cur = segment(order)
        if abs(cur - prev) <= rel_tol * abs(cur) + 1e-15:
            return cur, order
        prev = cur
    raise QuadratureConvergenceError(
        f"phase integral did not converge to rel_tol={rel_tol:g} "
        f"by order {order_max}"
    )


def action_between(p2, a: float, b: float, rel_tol: float = 1e-12):
    """integral_a^b sqrt(max(p2(r), 0)) dr for a vectorized callable p2.

    Generic-callable path, used for tabulated potentials and as the reference
    the compiled kernels are checked against. Returns (value, order_used).
    """
    if not b > a:
        raise ValueError(f"need b > a, got a={a}, b={b}")
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)

    def segment(order: int) -> float:
        x, w = gauss_legendre_nodes(order)
        u = 0.5 * np.pi * x
        r = mid + half * np.sin(u)
        vals = np.asarray(p2(r), dtype=float)
        np.maximum(vals, 0.0, out=vals)
        jac = 0.5 * np.pi * half * np.cos(u)
        return float(np.dot(w, np.sqrt(vals) * jac))

    return adaptive_refine(segment, rel_tol)
