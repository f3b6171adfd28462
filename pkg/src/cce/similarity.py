"""Similarity matrix construction.

Builders for the pairwise similarity matrix ``S`` that drives connection
center evolution:

    gaussian_kernel: ``s_ij = exp(-||v_i - v_j||^2 / sigma^2)`` over a point set.
    from_matrix: validate a precomputed matrix.
    from_routes: route-count similarity for a transport network.
    njw_normalize: symmetric degree normalization ``D^-1/2 S D^-1/2``.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial.distance import pdist, squareform

from .errors import InputError, ParameterError, ValidationError

SYMMETRY_RTOL = 1e-12


def _default_labels(n: int) -> tuple[str, ...]:
    return tuple(str(i) for i in range(n))


def _check_unique(labels: Sequence[str], what: str) -> None:
    seen: dict[str, int] = {}
    for i, label in enumerate(labels):
        if label in seen:
            raise ValidationError(
                f"duplicate {what} {label!r} at positions {seen[label]} and {i}"
            )
        seen[label] = i


@dataclass(frozen=True)
class PointSet:
    """``n`` points in ``R^L`` with optional unique identifiers."""

    points: np.ndarray
    ids: tuple[str, ...] = ()

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        if pts.ndim == 1 and pts.size > 0:
            pts = pts[:, None]
        if pts.ndim != 2 or pts.shape[0] < 1 or pts.shape[1] < 1:
            raise InputError(
                f"points must be a nonempty n x L array, got shape {pts.shape}"
            )
        bad = np.argwhere(~np.isfinite(pts))
        if bad.size:
            i, j = bad[0]
            raise InputError(f"non-finite coordinate at point {i}, dimension {j}")
        ids = tuple(str(x) for x in self.ids) or _default_labels(pts.shape[0])
        if len(ids) != pts.shape[0]:
            raise InputError(f"{len(ids)} identifiers given for {pts.shape[0]} points")
        _check_unique(ids, "point identifier")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "ids", ids)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]


@dataclass(frozen=True)
class SimilarityMatrix:
    """Symmetric, nonnegative, finite ``n x n`` similarity matrix.

    Construction validates the entries and stores the exact symmetrization
    ``(S + S^T) / 2``; the stored array is read-only.
    """

    entries: np.ndarray
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        S = _validated_square(self.entries)
        labels = tuple(str(x) for x in self.labels) or _default_labels(S.shape[0])
        if len(labels) != S.shape[0]:
            raise ValidationError(
                f"{len(labels)} labels given for a matrix of order {S.shape[0]}"
            )
        _check_unique(labels, "label")
        S.setflags(write=False)
        object.__setattr__(self, "entries", S)
        object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)

    def scaled(self, c: float) -> SimilarityMatrix:
        if not c > 0:
            raise ParameterError(f"scale factor must be positive, got {c}")
        return SimilarityMatrix(self.entries * c, self.labels)


def _validated_square(entries) -> np.ndarray:
    try:
        S = np.array(entries, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"matrix is not numeric: {exc}") from None
    if S.ndim != 2 or S.shape[0] != S.shape[1]:
        raise ValidationError(f"matrix must be square, got shape {S.shape}")
    if S.shape[0] == 0:
        raise ValidationError("matrix must have order >= 1")
    bad = np.argwhere(~np.isfinite(S))
    if bad.size:
        i, j = bad[0]
        raise ValidationError(f"non-finite entry at ({i}, {j})")
    bad = np.argwhere(S < 0)
    if bad.size:
        i, j = bad[0]
        raise ValidationError(f"negative entry {S[i, j]!r} at ({i}, {j})")
    diff = np.abs(S - S.T)
    limit = SYMMETRY_RTOL * np.maximum(1.0, np.maximum(np.abs(S), np.abs(S.T)))
    bad = np.argwhere(diff > limit)
    if bad.size:
        i, j = bad[0]
        raise ValidationError(
            f"matrix is not symmetric: entry ({i}, {j}) = {S[i, j]!r} "
            f"but ({j}, {i}) = {S[j, i]!r}"
        )
    return (S + S.T) / 2


def from_matrix(entries, labels: Sequence[str] | None = None) -> SimilarityMatrix:
    """Validate a precomputed similarity matrix.

    Raises ValidationError naming the offending indices for non-square,
    non-finite, negative, or asymmetric input (relative tolerance 1e-12).
    """
    return SimilarityMatrix(entries, tuple(labels or ()))


def gaussian_kernel(points: PointSet | np.ndarray, sigma: float) -> SimilarityMatrix:
    """Gaussian similarity ``exp(-||v_i - v_j||^2 / sigma^2)``.

    The exponent divides by ``sigma**2`` rather than ``2 * sigma**2``.
    """
    if not isinstance(points, PointSet):
        points = PointSet(points)
    sigma = float(sigma)
    if not (np.isfinite(sigma) and sigma > 0):
        raise ParameterError(f"sigma must be a positive finite number, got {sigma}")
    if points.n == 1:
        return SimilarityMatrix(np.ones((1, 1)), points.ids)
    sq = squareform(pdist(points.points, "sqeuclidean"))
    return SimilarityMatrix(np.exp(-sq / sigma**2), points.ids)


def auto_sigma(points: PointSet | np.ndarray) -> float:
    """Median pairwise Euclidean distance, a heuristic default for sigma."""
    if not isinstance(points, PointSet):
        points = PointSet(points)
    if points.n < 2:
        return 1.0
    sigma = float(np.median(pdist(points.points)))
    if sigma <= 0:
        raise ParameterError("automatic sigma is zero: all points coincide")
    return sigma


def njw_normalize(S: SimilarityMatrix) -> SimilarityMatrix:
    """Return ``D^-1/2 S D^-1/2`` with ``D`` the diagonal of row sums.

    The diagonal of ``S`` is kept, since connection centers are read off
    the diagonal of the matrix powers.
    """
    A = np.asarray(S.entries)
    d = A.sum(axis=1)
    zero = np.flatnonzero(d <= 0)
    if zero.size:
        i = zero[0]
        raise ValidationError(
            f"row {i} (point {S.labels[i]!r}) has zero sum; isolated point "
            "cannot be normalized"
        )
    r = 1.0 / np.sqrt(d)
    return SimilarityMatrix(A * r[:, None] * r[None, :], S.labels)


@dataclass(frozen=True)
class RouteNetwork:
    """Stations and routes; each route is an ordered stop list."""

    stations: tuple[str, ...]
    routes: tuple[tuple[str, ...], ...] = field(default=())

    def __post_init__(self):
        stations = tuple(str(s) for s in self.stations)
        _check_unique(stations, "station")
        known = set(stations)
        routes = []
        for r, route in enumerate(self.routes):
            route = tuple(str(s) for s in route)
            if len(route) < 2:
                raise ValidationError(f"route {r} has fewer than 2 stations")
            if len(set(route)) != len(route):
                raise ValidationError(f"route {r} visits a station more than once")
            missing = [s for s in route if s not in known]
            if missing:
                raise ValidationError(f"route {r} references unknown station {missing[0]!r}")
            routes.append(route)
        object.__setattr__(self, "stations", stations)
        object.__setattr__(self, "routes", tuple(routes))

    @classmethod
    def from_routes(cls, routes: Sequence[Sequence[str]]) -> RouteNetwork:
        """Build a network whose stations are listed in order of first appearance."""
        stations = dict.fromkeys(str(s) for route in routes for s in route)
        return cls(tuple(stations), tuple(tuple(r) for r in routes))


def from_routes(net: RouteNetwork) -> SimilarityMatrix:
    """Route-count similarity.

    ``s_ij`` counts route segments joining stations i and j directly, in
    either direction. Each route adds its number of stops to the diagonal
    of its first and last station and 2 to each intermediate station.
    """
    index = {s: i for i, s in enumerate(net.stations)}
    S = np.zeros((len(index), len(index)))
    for route in net.routes:
        idx = [index[s] for s in route]
        for a, b in zip(idx[:-1], idx[1:]):
            S[a, b] += 1
            S[b, a] += 1
        S[idx[0], idx[0]] += len(idx)
        S[idx[-1], idx[-1]] += len(idx)
        for i in idx[1:-1]:
            S[i, i] += 2
    return SimilarityMatrix(S, net.stations)
