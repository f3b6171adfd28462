"""Platform detection on the cluster-count curve of an evolution trace."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from .errors import ParameterError
from .evolution import ClusterSnapshot, EvolutionTrace, filter_noise


@dataclass(frozen=True)
class Platform:
    """Maximal run ``k_start..k_end`` (inclusive) of constant cluster count."""

    k_start: int
    k_end: int
    cluster_count: int
    partition_stable: bool

    @property
    def length(self) -> int:
        return self.k_end - self.k_start + 1


def _snapshots(trace: EvolutionTrace, noise_threshold: int) -> list[ClusterSnapshot]:
    if noise_threshold > 0:
        return [filter_noise(s, noise_threshold)[0] for s in trace.snapshots]
    return list(trace.snapshots)


def detect_platforms(
    trace: EvolutionTrace, min_length: int = 2, noise_threshold: int = 0
) -> list[Platform]:
    """Maximal runs of equal cluster count lasting at least ``min_length``.

    With ``noise_threshold > 0`` the counts (and the labels used for
    ``partition_stable``) are taken after removing clusters of at most
    that many points.
    """
    if min_length < 1:
        raise ParameterError(f"min_length must be >= 1, got {min_length}")
    snaps = _snapshots(trace, noise_threshold)
    platforms = []
    start = 0
    for i in range(1, len(snaps) + 1):
        if i < len(snaps) and snaps[i].cluster_count == snaps[start].cluster_count:
            continue
        run = snaps[start:i]
        if len(run) >= min_length:
            stable = all(run[0].same_partition(s) for s in run[1:])
            platforms.append(
                Platform(run[0].k, run[-1].k, run[0].cluster_count, stable)
            )
        start = i
    return platforms


def suggest_counts(platforms: Sequence[Platform]) -> list[tuple[int, int]]:
    """Rank cluster counts by total platform length.

    Returns ``(cluster_count, total_length)`` pairs, longest first; ties
    go to the count whose first platform starts earlier. A final platform
    with a single cluster is not a suggestion.
    """
    platforms = sorted(platforms, key=lambda p: p.k_start)
    if platforms and platforms[-1].cluster_count == 1:
        platforms = platforms[:-1]
    total: dict[int, int] = {}
    first: dict[int, int] = {}
    for p in platforms:
        total[p.cluster_count] = total.get(p.cluster_count, 0) + p.length
        first.setdefault(p.cluster_count, p.k_start)
    ranked = sorted(total, key=lambda c: (-total[c], first[c]))
    return [(c, total[c]) for c in ranked]


def skipped_counts(trace: EvolutionTrace) -> set[int]:
    """Counts strictly between the final and initial count never visited."""
    counts = trace.counts
    if not counts:
        return set()
    lo, hi = sorted((counts[-1], counts[0]))
    return set(range(lo + 1, hi)) - set(counts)
