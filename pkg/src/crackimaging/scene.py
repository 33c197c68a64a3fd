"""Crack geometry, incidence directions, frequency sweeps and imaging grids.

Coordinates are dimensionless and share their unit with the wavelengths.
Extended cracks are represented for the forward model as clouds of point
scatterers sampled along their locus.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence, Union

import numpy as np


class Point2(NamedTuple):
    x: float
    y: float


def _as_point(p) -> Point2:
    x, y = (float(v) for v in p)
    if not (math.isfinite(x) and math.isfinite(y)):
        raise ValueError(f"point coordinates must be finite, got ({x}, {y})")
    return Point2(x, y)


def _check_rho(rho: float) -> float:
    rho = float(rho)
    if not 0.0 < rho < 2.0:
        raise ValueError(f"crack half-length violates 0<rho<2 (rho={rho})")
    return rho


@dataclass(frozen=True)
class PointCrack:
    """Small crack of half-length ``rho`` treated as a single scatterer."""

    center: Point2
    rho: float = 0.05

    def __post_init__(self):
        object.__setattr__(self, "center", _as_point(self.center))
        object.__setattr__(self, "rho", _check_rho(self.rho))


@dataclass(frozen=True)
class SegmentCrack:
    start: Point2
    end: Point2
    rho: float = 0.05

    def __post_init__(self):
        object.__setattr__(self, "start", _as_point(self.start))
        object.__setattr__(self, "end", _as_point(self.end))
        object.__setattr__(self, "rho", _check_rho(self.rho))
        if self.start == self.end:
            raise ValueError("segment crack needs distinct endpoints")

    @property
    def length(self) -> float:
        return math.hypot(self.end.x - self.start.x, self.end.y - self.start.y)


@dataclass(frozen=True)
class ArcCrack:
    """Circular arc ``center + radius * (cos t, sin t)`` for ``t`` in
    ``[angle_start, angle_end]``."""

    center: Point2
    radius: float
    angle_start: float
    angle_end: float
    rho: float = 0.05

    def __post_init__(self):
        object.__setattr__(self, "center", _as_point(self.center))
        object.__setattr__(self, "rho", _check_rho(self.rho))
        if not self.radius > 0:
            raise ValueError(f"arc radius must be positive, got {self.radius}")
        if not self.angle_start < self.angle_end:
            raise ValueError("arc requires angle_start < angle_end")

    @property
    def length(self) -> float:
        return self.radius * (self.angle_end - self.angle_start)


Crack = Union[PointCrack, SegmentCrack, ArcCrack]


@dataclass(frozen=True, eq=False)
class ScattererCloud:
    """Point scatterers with a common half-length.

    ``points`` has shape (L, 2); ``source`` gives the index of the crack each
    point was sampled from.
    """

    points: np.ndarray
    rho: float
    source: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float).reshape(-1, 2)
        if len(pts) == 0:
            raise ValueError("scatterer cloud must be nonempty")
        _check_rho(self.rho)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "source", np.asarray(self.source, dtype=int))

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True, eq=False)
class DirectionSet:
    """N unit vectors equi-distributed on the circle, ``vectors`` of shape (N, 2)."""

    vectors: np.ndarray

    @property
    def n(self) -> int:
        return len(self.vectors)

    def antipodal_index(self) -> np.ndarray:
        """Index map ``m -> m'`` with ``theta[m'] == -theta[m]``."""
        n = self.n
        return (np.arange(n) + n // 2) % n


def make_directions(n: int) -> DirectionSet:
    if n < 2 or n % 2:
        raise ValueError(f"number of directions must be even and >= 2, got N={n}")
    t = 2.0 * np.pi * np.arange(n) / n
    vec = np.stack([np.cos(t), np.sin(t)], axis=1)
    # exact negation for the second half so the set is closed under theta -> -theta
    vec[n // 2:] = -vec[: n // 2]
    return DirectionSet(vec)


@dataclass(frozen=True, eq=False)
class FrequencyGrid:
    omegas: np.ndarray

    @property
    def k(self) -> int:
        return len(self.omegas)


def make_frequencies(lambda_min: float, lambda_max: float, k: int) -> FrequencyGrid:
    """Angular frequencies equi-spaced from ``2*pi/lambda_max`` up to ``2*pi/lambda_min``."""
    if not (lambda_min > 0 and lambda_max > 0):
        raise ValueError("wavelengths must be positive")
    if not lambda_min < lambda_max:
        raise ValueError(f"need lambda_min < lambda_max, got {lambda_min}, {lambda_max}")
    if k < 1:
        raise ValueError(f"need K >= 1, got {k}")
    w1 = 2.0 * np.pi / lambda_max
    wk = 2.0 * np.pi / lambda_min
    if k == 1:
        return FrequencyGrid(np.array([w1]))
    return FrequencyGrid(w1 + np.arange(k) * ((wk - w1) / (k - 1)))


@dataclass(frozen=True)
class ImagingGrid:
    """Sample points ``origin + (i*spacing, j*spacing)``, 0 <= i < nx, 0 <= j < ny."""

    origin: Point2
    spacing: float
    nx: int
    ny: int

    def __post_init__(self):
        object.__setattr__(self, "origin", _as_point(self.origin))
        if not self.spacing > 0:
            raise ValueError(f"grid spacing must be positive, got {self.spacing}")
        if self.nx < 1 or self.ny < 1:
            raise ValueError("grid needs nx, ny >= 1")

    @classmethod
    def centered(cls, center=(0.0, 0.0), side: float = 2.0, n: int = 101) -> "ImagingGrid":
        h = side / (n - 1) if n > 1 else side
        c = _as_point(center)
        return cls(Point2(c.x - h * (n - 1) / 2, c.y - h * (n - 1) / 2), h, n, n)

    @property
    def xs(self) -> np.ndarray:
        return self.origin.x + self.spacing * np.arange(self.nx)

    @property
    def ys(self) -> np.ndarray:
        return self.origin.y + self.spacing * np.arange(self.ny)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.ny, self.nx)

    def points(self) -> np.ndarray:
        """All sample points, shape (ny*nx, 2), row-major (x varies fastest)."""
        gx, gy = np.meshgrid(self.xs, self.ys)
        return np.stack([gx.ravel(), gy.ravel()], axis=1)

    def point(self, j: int, i: int) -> Point2:
        return Point2(self.origin.x + i * self.spacing, self.origin.y + j * self.spacing)

    def nearest_index(self, p) -> tuple[int, int]:
        """(row, column) of the sample nearest to ``p``, clipped to the grid."""
        p = _as_point(p)
        i = int(np.clip(round((p.x - self.origin.x) / self.spacing), 0, self.nx - 1))
        j = int(np.clip(round((p.y - self.origin.y) / self.spacing), 0, self.ny - 1))
        return j, i


def crack_length(crack: Crack) -> float:
    return 0.0 if isinstance(crack, PointCrack) else crack.length


def _sample(crack: Crack, max_spacing: float) -> np.ndarray:
    if isinstance(crack, PointCrack):
        return np.array([crack.center])
    n = math.ceil(crack.length / max_spacing) + 1
    t = np.linspace(0.0, 1.0, n)
    if isinstance(crack, SegmentCrack):
        a = np.asarray(crack.start)
        b = np.asarray(crack.end)
        return a + t[:, None] * (b - a)
    ang = crack.angle_start + t * (crack.angle_end - crack.angle_start)
    return np.asarray(crack.center) + crack.radius * np.stack([np.cos(ang), np.sin(ang)], axis=1)


def discretize(cracks: Sequence[Crack], max_spacing: float) -> ScattererCloud:
    """Sample each crack into point scatterers no further apart than ``max_spacing``
    along its locus, endpoints included."""
    if not max_spacing > 0:
        raise ValueError(f"max_spacing must be positive, got {max_spacing}")
    if not cracks:
        raise ValueError("need at least one crack")
    rhos = {c.rho for c in cracks}
    if len(rhos) != 1:
        raise ValueError(f"all cracks must share one half-length rho, got {sorted(rhos)}")
    chunks = [_sample(c, max_spacing) for c in cracks]
    source = np.concatenate([np.full(len(ch), i) for i, ch in enumerate(chunks)])
    return ScattererCloud(np.concatenate(chunks), rhos.pop(), source)


def locus_distance(crack: Crack, p) -> float:
    """Euclidean distance from ``p`` to the crack locus."""
    p = np.asarray(p, dtype=float)
    if isinstance(crack, PointCrack):
        return float(np.hypot(*(p - np.asarray(crack.center))))
    if isinstance(crack, SegmentCrack):
        a, b = np.asarray(crack.start), np.asarray(crack.end)
        d = b - a
        t = np.clip(np.dot(p - a, d) / np.dot(d, d), 0.0, 1.0)
        return float(np.hypot(*(p - a - t * d)))
    c = np.asarray(crack.center)
    ang = math.atan2(p[1] - c[1], p[0] - c[0])
    # unwrap into [angle_start, angle_start + 2pi)
    ang = crack.angle_start + (ang - crack.angle_start) % (2 * math.pi)
    if ang <= crack.angle_end:
        return abs(float(np.hypot(*(p - c))) - crack.radius)
    ends = [c + crack.radius * np.array([math.cos(a), math.sin(a)])
            for a in (crack.angle_start, crack.angle_end)]
    return min(float(np.hypot(*(p - e))) for e in ends)
