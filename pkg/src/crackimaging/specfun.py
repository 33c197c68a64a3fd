"""Bessel functions J0, J1 of the first kind and the kernels built on them.

J0 and J1 use the ascending power series for |z| <= 12 and the Hankel
asymptotic expansion beyond; absolute error is below 1e-10 on |z| <= 100.
"""
from __future__ import annotations

import numpy as np

from .scene import DirectionSet

SERIES_CUTOFF = 12.0
_SERIES_TERMS = 60
_ASYMPTOTIC_TERMS = 22


def _series(z: np.ndarray, order: int) -> np.ndarray:
    q = -(z * z) / 4.0
    term = np.ones_like(z)
    if order == 1:
        term = z / 2.0
    total = term.copy()
    for k in range(1, _SERIES_TERMS):
        term = term * q / (k * (k + order))
        total += term
    return total


def _hankel(z: np.ndarray, order: int) -> np.ndarray:
    """Asymptotic expansion for large positive z."""
    mu = 4.0 * order * order
    p = np.zeros_like(z)
    q = np.zeros_like(z)
    term = np.ones_like(z)
    for k in range(_ASYMPTOTIC_TERMS):
        if k % 2 == 0:
            p += term if k % 4 == 0 else -term
        else:
            q += term if k % 4 == 1 else -term
        term = term * (mu - (2 * k + 1) ** 2) / ((k + 1) * 8.0 * z)
    chi = z - (order / 2.0 + 0.25) * np.pi
    return np.sqrt(2.0 / (np.pi * z)) * (p * np.cos(chi) - q * np.sin(chi))


def _bessel(z, order: int):
    z = np.asarray(z, dtype=float)
    a = np.abs(z)
    out = np.empty_like(a)
    small = a <= SERIES_CUTOFF
    out[small] = _series(a[small], order)
    out[~small] = _hankel(a[~small], order)
    if order == 1:
        out = np.where(z < 0, -out, out)
    return out if out.ndim else float(out)


def bessel_j0(z):
    """J0(z), elementwise for array input."""
    return _bessel(z, 0)


def bessel_j1(z):
    """J1(z), elementwise for array input."""
    return _bessel(z, 1)


def circle_sum(y, omega: float, dirs: DirectionSet) -> complex:
    """Average of ``exp(i*omega*theta.y)`` over the direction set.

    Tends to J0(omega*|y|) as the number of directions grows.
    """
    phase = omega * (dirs.vectors @ np.asarray(y, dtype=float))
    return complex(np.mean(np.exp(1j * phase)))


def quadrature_oracle_psf(r: float, omega1: float, omegak: float, panels: int = 4096) -> float:
    """Composite Simpson rule for the integral of ``w*J0(w*r)**2`` over [omega1, omegak].

    Test oracle for the closed-form point spread function.
    """
    if panels < 2 or panels % 2:
        raise ValueError(f"Simpson rule needs an even panel count >= 2, got {panels}")
    if r < 0:
        raise ValueError("r must be nonnegative")
    w = np.linspace(omega1, omegak, panels + 1)
    f = w * bessel_j0(w * r) ** 2
    h = (omegak - omega1) / panels
    return float(h / 3.0 * (f[0] + f[-1] + 4.0 * f[1:-1:2].sum() + 2.0 * f[2:-1:2].sum()))
