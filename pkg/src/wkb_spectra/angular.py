"""Azimuthal and polar quantization plus the quasiclassical angular functions.

The polar problem quantizes to M = (l + 1/2) hbar, which is what turns the
l(l+1) centrifugal coefficient into the Langer form (l + 1/2)**2. At l = 0
the minimal magnitude M0 = hbar/2 survives as zero-point angular motion, and
the corresponding amplitude is a nodeless standing half-wave in theta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import UnitsContext
from .errors import NoClassicalRegionError, ParameterError
from .quadrature import adaptive_refine, gauss_legendre_nodes

__all__ = [
    "AngularEigenvalue",
    "quantize_azimuthal",
    "quantize_polar",
    "eigenvalue_for",
    "polar_phase_integral",
    "polar_phase_exact",
    "angular_wavefunction",
]


@dataclass(frozen=True)
class AngularEigenvalue:
    """Quantized angular momentum magnitude M and projection M_z."""

    M: float
    M_z: float
    l: int
    m_z: int

    @property
    def m2(self) -> float:
        # Squared once from the stored M so downstream consumers all see
        # the identical float.
        return self.M * self.M


def quantize_azimuthal(m_z: int, units: UnitsContext = UnitsContext()) -> float:
    """M_z = hbar * m_z."""
    return units.hbar * m_z


def quantize_polar(n_theta: int, m_z: int,
                   units: UnitsContext = UnitsContext()) -> AngularEigenvalue:
    """Polar quantization: l = n_theta + |m_z|, M = (l + 1/2) hbar."""
    if n_theta < 0:
        raise ParameterError(f"n_theta must be >= 0, got {n_theta}")
    l = n_theta + abs(m_z)
    return AngularEigenvalue(
        M=(l + 0.5) * units.hbar,
        M_z=quantize_azimuthal(m_z, units),
        l=l,
        m_z=m_z,
    )


def eigenvalue_for(l: int, m_z: int = 0,
                   units: UnitsContext = UnitsContext()) -> AngularEigenvalue:
    """AngularEigenvalue for given (l, m_z) without going through n_theta."""
    if l < 0 or abs(m_z) > l:
        raise ParameterError(f"need l >= 0 and |m_z| <= l, got l={l}, m_z={m_z}")
    return quantize_polar(l - abs(m_z), m_z, units)


def polar_phase_exact(M: float, M_z: float) -> float:
    """Closed form pi (M - |M_z|) of the polar phase integral."""
    return math.pi * (M - abs(M_z))


def polar_phase_integral(M: float, M_z: float,
                         units: UnitsContext = UnitsContext(),
                         rel_tol: float = 1e-12) -> float:
    """integral over [theta1, theta2] of sqrt(M^2 - M_z^2/sin^2 theta) dtheta.

    theta1 = arcsin(|M_z|/M), theta2 = pi - theta1. The sin substitution
    centered on pi/2 absorbs the inverse-square-root turning-point
    singularities; Gauss-Legendre order is doubled until two successive
    values agree to rel_tol. Equals pi (M - |M_z|) up to quadrature error.
    """
    mz = abs(M_z)
    if not M > mz:
        raise NoClassicalRegionError(
            f"polar motion needs M > |M_z|, got M={M}, |M_z|={mz}"
        )
    theta1 = math.asin(mz / M) if mz > 0 else 0.0
    half = 0.5 * math.pi - theta1  # half-width about pi/2
    m2, mz2 = M * M, mz * mz

    def segment(order: int) -> float:
        x, w = gauss_legendre_nodes(order)
        u = 0.5 * np.pi * x
        theta = 0.5 * np.pi + half * np.sin(u)
        s = np.sin(theta)
        vals = m2 - mz2 / (s * s)
        np.maximum(vals, 0.0, out=vals)
        jac = 0.5 * np.pi * half * np.cos(u)
        return float(np.dot(w, np.sqrt(vals) * jac))

    value, _ = adaptive_refine(segment, rel_tol)
    return value


def angular_wavefunction(l: int, m_z: int, theta, phi,
                         units: UnitsContext = UnitsContext()):
    """Elementary far-from-turning-points angular eigenfunction.

    (1/pi) sqrt((l + 1/2)/(l - m_z + 1/2)) cos[(l + 1/2) theta
        + (pi/2)(l - m_z)] exp(i m_z phi)

    hbar cancels, so `units` is accepted only for signature uniformity.
    Scalar angles give a complex scalar, arrays broadcast.
    """
    if l < 0 or abs(m_z) > l:
        raise ParameterError(f"need l >= 0 and |m_z| <= l, got l={l}, m_z={m_z}")
    theta_arr = np.asarray(theta, dtype=float)
    phi_arr = np.asarray(phi, dtype=float)
    pref = math.sqrt((l + 0.5) / (l - m_z + 0.5)) / math.pi
    amp = pref * np.cos((l + 0.5) * theta_arr + 0.5 * math.pi * (l - m_z))
    out = amp * np.exp(1j * m_z * phi_arr)
    if np.ndim(theta) == 0 and np.ndim(phi) == 0:
        return complex(out)
    return out
