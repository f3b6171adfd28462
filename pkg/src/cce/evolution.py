"""Connection center evolution engine.

Powers of the similarity matrix are built one multiplication at a time.
At each order ``k`` a point ``i`` is a connection center when its
self-connectivity ``s_ii^(k)`` is at least its connectivity ``s_ij^(k)``
to every other point; the remaining points join the center with the
largest relative connectivity ``s_cj^(k) / s_cc^(k)``.

Only ratios and within-row comparisons of ``S^k`` are ever used, so the
engine keeps a rescaled copy of the power whose largest entry is 1. Each
connected component is rescaled on its own: a weakly connected block
would otherwise underflow to zero next to a dominant one.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.sparse.csgraph import connected_components

from .errors import ParameterError
from .similarity import SimilarityMatrix


class StopReason(str, Enum):
    COLLAPSED = "collapsed-to-one"
    K_MAX = "reached-k-max"
    ZERO = "zero-matrix"


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


_TINY = np.finfo(float).tiny


def _flush_subnormal(M: np.ndarray) -> np.ndarray:
    # subnormal operands slow BLAS down by an order of magnitude
    M[M < _TINY] = 0.0
    return M


def _component_scale(M: np.ndarray, comp: np.ndarray, n_comp: int) -> np.ndarray:
    """Largest entry of each diagonal block, 1.0 for all-zero blocks."""
    scale = np.zeros(n_comp)
    np.maximum.at(scale, comp, M.max(axis=1))
    scale[scale <= 0] = 1.0
    return scale


@dataclass(frozen=True, eq=False)
class PowerState:
    """Rescaled ``k``-th power of a similarity matrix.

    ``matrix[i, j] * exp(log_scale[i])`` recovers ``(S^k)[i, j]``; entries
    joining different components are exactly zero.
    """

    k: int
    matrix: np.ndarray
    log_scale: np.ndarray
    base: SimilarityMatrix
    components: np.ndarray
    step_matrix: np.ndarray
    step_log_scale: np.ndarray

    @classmethod
    def initial(cls, S: SimilarityMatrix) -> PowerState:
        A = np.array(S.entries, dtype=float)
        A /= max(A.max(), _TINY)
        _flush_subnormal(A)
        n_comp, comp = connected_components(A > 0, directed=False)
        scale = _component_scale(A, comp, n_comp)
        A /= scale[comp][:, None]
        _flush_subnormal(A)
        log_scale = (np.log(scale) + np.log(max(np.max(S.entries), _TINY)))[comp]
        _frozen(A)
        _frozen(log_scale)
        return cls(1, A, log_scale, S, _frozen(comp), A, log_scale)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def diagonal(self) -> np.ndarray:
        return np.diagonal(self.matrix)

    @property
    def is_zero(self) -> bool:
        return not self.matrix.any()

    def unscaled(self) -> np.ndarray:
        """The power ``S^k`` itself; may overflow for large ``k``."""
        return self.matrix * np.exp(self.log_scale)[:, None]


def power_step(state: PowerState) -> PowerState:
    """Advance ``S^k`` to ``S^(k+1)``, rescale, and re-symmetrize."""
    M = state.matrix @ state.step_matrix
    M = (M + M.T) / 2
    comp = state.components
    scale = _component_scale(M, comp, int(comp.max()) + 1)
    M /= scale[comp][:, None]
    _flush_subnormal(M)
    log_scale = state.log_scale + state.step_log_scale + np.log(scale)[comp]
    return PowerState(
        state.k + 1,
        _frozen(M),
        _frozen(log_scale),
        state.base,
        comp,
        state.step_matrix,
        state.step_log_scale,
    )


def find_centers(state: PowerState, epsilon: float = 0.0) -> tuple[int, ...]:
    """Indices ``i`` with ``matrix[i, i] >= matrix[i, j] - epsilon`` for all ``j``."""
    if epsilon < 0:
        raise ParameterError(f"epsilon must be nonnegative, got {epsilon}")
    M = state.matrix
    mask = np.diagonal(M) >= M.max(axis=1) - epsilon
    return tuple(int(i) for i in np.flatnonzero(mask))


@dataclass(frozen=True, eq=False)
class ClusterSnapshot:
    """Centers and per-point labels at one power ``k``.

    ``labels[i]`` is the index of the center point ``i`` belongs to, or -1
    for points removed as noise.
    """

    k: int
    centers: tuple[int, ...]
    labels: np.ndarray
    noise: tuple[int, ...] = ()

    @property
    def cluster_count(self) -> int:
        return len(self.centers)

    @property
    def n(self) -> int:
        return len(self.labels)

    def clusters(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {c: [] for c in self.centers}
        for i, c in enumerate(self.labels):
            if c >= 0:
                out[int(c)].append(i)
        return out

    def same_partition(self, other: ClusterSnapshot) -> bool:
        return self.centers == other.centers and np.array_equal(self.labels, other.labels)


def assign_points(state: PowerState, centers) -> ClusterSnapshot:
    """Assign every non-center to the center of largest relative connectivity.

    Ties go to the lowest center index. A point with zero relative
    connectivity to every center (only possible for disconnected graphs,
    or when no center exists) becomes a singleton center of its own, as
    does any center with a zero diagonal.
    """
    n = state.n
    centers = np.asarray(sorted(set(int(c) for c in centers)), dtype=int)
    labels = np.arange(n)
    if centers.size:
        M = state.matrix
        d = np.diagonal(M)[centers]
        rows = M[centers]
        with np.errstate(divide="ignore", invalid="ignore"):
            rcon = np.where(d[:, None] > 0, rows / d[:, None], 0.0)
        best = np.argmax(rcon, axis=0)
        reach = rcon[best, np.arange(n)]
        others = np.ones(n, dtype=bool)
        others[centers] = False
        assigned = others & (reach > 0)
        labels[assigned] = centers[best[assigned]]
    out_centers = tuple(int(i) for i in np.flatnonzero(labels == np.arange(n)))
    return ClusterSnapshot(state.k, out_centers, _frozen(labels))


def filter_noise(
    snapshot: ClusterSnapshot, max_noise_size: int = 2
) -> tuple[ClusterSnapshot, tuple[int, ...]]:
    """Drop clusters with at most ``max_noise_size`` members.

    Members of dropped clusters are reported as noise (label -1) and are
    not reassigned.
    """
    if max_noise_size < 0:
        raise ParameterError(f"max_noise_size must be >= 0, got {max_noise_size}")
    if max_noise_size == 0:
        return snapshot, snapshot.noise
    labels = np.array(snapshot.labels)
    live = labels >= 0
    sizes = np.bincount(labels[live], minlength=snapshot.n)
    small = [c for c in snapshot.centers if sizes[c] <= max_noise_size]
    drop = np.isin(labels, small) & live
    labels[drop] = -1
    noise = tuple(sorted(set(snapshot.noise) | set(int(i) for i in np.flatnonzero(drop))))
    centers = tuple(c for c in snapshot.centers if sizes[c] > max_noise_size)
    return ClusterSnapshot(snapshot.k, centers, _frozen(labels), noise), noise


@dataclass(frozen=True, eq=False)
class EvolutionTrace:
    """Snapshots for ``k = 1 .. k_stop`` and the reason the run ended."""

    snapshots: tuple[ClusterSnapshot, ...]
    stop_reason: StopReason

    def __len__(self) -> int:
        return len(self.snapshots)

    def __getitem__(self, i):
        return self.snapshots[i]

    def __iter__(self):
        return iter(self.snapshots)

    @property
    def k_stop(self) -> int:
        return self.snapshots[-1].k

    @property
    def counts(self) -> list[int]:
        return [s.cluster_count for s in self.snapshots]

    def at(self, k: int) -> ClusterSnapshot:
        return self.snapshots[k - 1]

    def filtered(self, max_noise_size: int) -> list[ClusterSnapshot]:
        return [filter_noise(s, max_noise_size)[0] for s in self.snapshots]


def iter_evolution(
    S: SimilarityMatrix, epsilon: float = 0.0
) -> Iterator[tuple[PowerState, ClusterSnapshot]]:
    """Yield the state and snapshot for ``k = 1, 2, ...`` without end."""
    state = PowerState.initial(S)
    while True:
        yield state, assign_points(state, find_centers(state, epsilon))
        state = power_step(state)


def run_evolution(
    S: SimilarityMatrix, k_max: int = 1000, epsilon: float = 0.0
) -> EvolutionTrace:
    """Record snapshots until one cluster remains or ``k_max`` is reached."""
    if k_max < 1:
        raise ParameterError(f"k_max must be >= 1, got {k_max}")
    if epsilon < 0:
        raise ParameterError(f"epsilon must be nonnegative, got {epsilon}")
    snapshots = []
    for state, snap in iter_evolution(S, epsilon):
        snapshots.append(snap)
        if state.is_zero:
            reason = StopReason.ZERO
        elif snap.cluster_count == 1:
            reason = StopReason.COLLAPSED
        elif state.k >= k_max:
            reason = StopReason.K_MAX
        else:
            continue
        return EvolutionTrace(tuple(snapshots), reason)
