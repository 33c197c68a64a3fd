"""Multi-frequency SVD imaging functional and its Bessel point spread function.

For search point ``x`` the functional is

    E(x) = sum_k sum_{l <= L_k} w_k * (conj(W(x; w_k)) . U_l) * (conj(W(x; w_k)) . conj(V_l))

with ``W`` the unit-normalized plane-wave steering vector and ``(U_l, V_l)``
the leading singular vectors of the MSR matrix at ``w_k``. For a single
scatterer and many directions, ``|E|`` follows ``sum_k w_k J0(w_k r)^2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .forward import MSRMatrix
from .scene import DirectionSet, ImagingGrid
from .specfun import bessel_j0, bessel_j1

# grid points per block when evaluating maps
_BLOCK = 4096


@dataclass(frozen=True, eq=False)
class SVDResult:
    """``M = left @ diag(singular_values) @ right.conj().T``; vectors are columns."""

    singular_values: np.ndarray
    left: np.ndarray
    right: np.ndarray

    def with_phases(self, phases) -> "SVDResult":
        """Rotate column ``l`` of both ``left`` and ``right`` by ``exp(i*phases[l])``."""
        f = np.exp(1j * np.asarray(phases, dtype=float))
        return SVDResult(self.singular_values, self.left * f, self.right * f)


def svd(m: MSRMatrix) -> SVDResult:
    u, s, vh = np.linalg.svd(m.entries)
    return SVDResult(s, u, vh.conj().T)


def select_rank(s: SVDResult, tau: float) -> int:
    """Number of singular values at or above ``tau * sigma_1``."""
    if not 0.0 < tau < 1.0:
        raise ValueError(f"tau must lie in (0, 1), got {tau}")
    sv = s.singular_values
    if len(sv) == 0 or sv[0] == 0.0:
        return 0
    return int(np.count_nonzero(sv >= tau * sv[0]))


def steering_matrix(points: np.ndarray, omega: float, dirs: DirectionSet) -> np.ndarray:
    """Unit steering vectors for many points, shape (len(points), N)."""
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    return np.exp(1j * omega * (pts @ dirs.vectors.T)) / math.sqrt(dirs.n)


def steering(x, omega: float, dirs: DirectionSet) -> np.ndarray:
    return steering_matrix(np.asarray(x, dtype=float), omega, dirs)[0]


def _functional(points: np.ndarray, per_frequency, dirs: DirectionSet) -> np.ndarray:
    out = np.zeros(len(points), dtype=complex)
    for omega, s, rank in per_frequency:
        if rank == 0:
            continue
        wc = steering_matrix(points, omega, dirs).conj()
        a = wc @ s.left[:, :rank]
        b = wc @ s.right[:, :rank].conj()
        out += omega * (a * b).sum(axis=1)
    return out


def imaging_value(x, per_frequency: Sequence[tuple[float, SVDResult, int]],
                  dirs: DirectionSet) -> complex:
    """E(x) from per-frequency ``(omega, svd, rank)`` triples."""
    for _, s, rank in per_frequency:
        if rank > len(s.singular_values):
            raise ValueError(f"rank {rank} exceeds matrix size {len(s.singular_values)}")
    return complex(_functional(np.asarray(x, dtype=float).reshape(1, 2), per_frequency, dirs)[0])


@dataclass(frozen=True, eq=False)
class ImagingMap:
    """Complex functional values on a grid, ``values[j, i]`` at ``grid.point(j, i)``."""

    grid: ImagingGrid
    values: np.ndarray
    omegas: np.ndarray
    ranks: tuple[int, ...]
    n_dirs: int
    metadata: dict = field(default_factory=dict)

    @property
    def magnitude(self) -> np.ndarray:
        return np.abs(self.values)

    @property
    def k(self) -> int:
        return len(self.omegas)

    def argmax(self) -> tuple[int, int]:
        """(row, column) of the global magnitude maximum, first in row-major order on ties."""
        j, i = np.unravel_index(int(np.argmax(self.magnitude)), self.grid.shape)
        return int(j), int(i)

    def peaks(self, count: int | None = None) -> list[tuple[int, int]]:
        return find_peaks(self.magnitude, count)


def evaluate_map(grid: ImagingGrid, matrices: Sequence[MSRMatrix], dirs: DirectionSet,
                 tau: float) -> ImagingMap:
    """SVD and rank selection per frequency, then E at every grid point.

    Summation runs over frequencies in input order for every block of grid
    points, so results are bit-reproducible.
    """
    if matrices:
        conv = {m.convention for m in matrices}
        sizes = {m.n for m in matrices}
        if len(conv) > 1 or sizes != {dirs.n}:
            raise ValueError("all matrices must share the convention and the direction count")
    per_frequency = []
    for m in matrices:
        s = svd(m)
        per_frequency.append((m.omega, s, select_rank(s, tau)))
    pts = grid.points()
    values = np.empty(len(pts), dtype=complex)
    for start in range(0, len(pts), _BLOCK):
        values[start:start + _BLOCK] = _functional(pts[start:start + _BLOCK], per_frequency, dirs)
    return ImagingMap(
        grid=grid,
        values=values.reshape(grid.shape),
        omegas=np.array([m.omega for m in matrices]),
        ranks=tuple(r for _, _, r in per_frequency),
        n_dirs=dirs.n,
    )


def find_peaks(mag: np.ndarray, count: int | None = None) -> list[tuple[int, int]]:
    """Local maxima over 8-neighbourhoods, strongest first.

    A sample is a peak when no neighbour exceeds it. Equal magnitudes are
    ordered by row-major index.
    """
    mag = np.asarray(mag, dtype=float)
    padded = np.pad(mag, 1, constant_values=-np.inf)
    ny, nx = mag.shape
    is_peak = np.ones_like(mag, dtype=bool)
    for dj in (-1, 0, 1):
        for di in (-1, 0, 1):
            if dj == di == 0:
                continue
            is_peak &= mag >= padded[1 + dj:1 + dj + ny, 1 + di:1 + di + nx]
    flat = np.flatnonzero(is_peak.ravel())
    order = np.argsort(-mag.ravel()[flat], kind="stable")
    idx = flat[order][:count]
    return [tuple(int(v) for v in np.unravel_index(i, mag.shape)) for i in idx]


def psf_closed_form(r, omega1: float, omegak: float):
    """Band-integrated single-scatterer profile

    (1/4pi^2) * [wK^2/2 (J0(wK r)^2 + J1(wK r)^2) - w1^2/2 (J0(w1 r)^2 + J1(w1 r)^2)].
    """
    r = np.asarray(r, dtype=float)

    def antiderivative(w):
        z = w * r
        return 0.5 * w * w * (bessel_j0(z) ** 2 + bessel_j1(z) ** 2)

    out = (antiderivative(omegak) - antiderivative(omega1)) / (4.0 * math.pi ** 2)
    return out if np.ndim(out) else float(out)


def radial_profile(values: np.ndarray) -> np.ndarray:
    """Magnitudes normalized by their value at index 0 (the scatterer)."""
    mag = np.abs(np.asarray(values))
    return mag / mag[0] if mag[0] else mag


