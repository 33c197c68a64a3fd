"""Normalized multi-static response (MSR) matrices and noise injection.

Data follow the leading-order asymptotic model for small Dirichlet cracks:
each scatterer contributes a plane-wave phase product scaled by
``c = -2*pi / (N * ln(rho/2))``. Row ``m`` is the test direction and
column ``n`` the incidence direction.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .scene import DirectionSet, ScattererCloud

CONVENTIONS = ("symmetric", "paper")


@dataclass(frozen=True, eq=False)
class MSRMatrix:
    entries: np.ndarray
    omega: float
    convention: str = "symmetric"

    @property
    def n(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class NoiseSpec:
    """Gaussian noise at ``snr_db`` (Frobenius-norm ratio); ``inf`` disables it."""

    snr_db: float = math.inf
    seed: int = 0

    def __post_init__(self):
        if math.isnan(self.snr_db) or self.snr_db == -math.inf:
            raise ValueError(f"snr_db must be finite or +inf, got {self.snr_db}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a nonnegative 64-bit integer")


def msr_prefactor(rho: float, n: int) -> float:
    if not 0.0 < rho < 2.0:
        raise ValueError(f"crack half-length violates 0<rho<2 (rho={rho})")
    return -2.0 * math.pi / (n * math.log(rho / 2.0))


def assemble_msr(cloud: ScattererCloud, omega: float, dirs: DirectionSet,
                 convention: str = "symmetric") -> MSRMatrix:
    """MSR matrix of a point-scatterer cloud at angular frequency ``omega``.

    ``symmetric`` gives ``c * sum_l exp(i w (theta_n + theta_m).z_l)`` (complex
    symmetric); ``paper`` gives ``c * sum_l exp(i w (theta_n - theta_m).z_l)``
    (Hermitian). For an even direction count they differ by the row
    permutation ``theta_m -> -theta_m``.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}; expected one of {CONVENTIONS}")
    c = msr_prefactor(cloud.rho, dirs.n)
    # a[n, l] = exp(i w theta_n . z_l)
    a = np.exp(1j * omega * (dirs.vectors @ cloud.points.T))
    test = a if convention == "symmetric" else a.conj()
    return MSRMatrix(c * (test @ a.T), float(omega), convention)


def add_noise(m: MSRMatrix, spec: NoiseSpec, stream: int = 0) -> MSRMatrix:
    """Add i.i.d. complex Gaussian noise rescaled to hit ``spec.snr_db`` exactly.

    The random stream is derived from ``(spec.seed, stream)``; pass the
    frequency index as ``stream`` so each frequency draws independent noise.
    """
    if spec.snr_db == math.inf:
        return m
    rng = np.random.default_rng(np.random.SeedSequence([spec.seed, stream]))
    shape = m.entries.shape
    noise = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    target = np.linalg.norm(m.entries) * 10.0 ** (-spec.snr_db / 20.0)
    noise *= target / np.linalg.norm(noise)
    return replace(m, entries=m.entries + noise)
