"""
Exact maxima of the two condition families on small graphs.

Both searches are maximum-independent-set problems in disguise: a
condition-I family is a set of vertices whose remote sets never overlap, and a
condition-II family is, for one fixed shared intersection I, a set of vertices
containing I whose residuals never overlap. Branch and bound keeps this
tractable up to about twenty non-star vertices.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InstanceTooLarge
from .graph_core import BipartiteGraph

__all__ = [
    "OracleResult",
    "max_condition_I_family",
    "max_condition_II_family",
    "volume_upper_bound",
]

DEFAULT_CAP = 20


@dataclass(frozen=True)
class OracleResult:
    best_size: int
    best_family: frozenset
    condition: str  # "I" or "II"
    explored: int


def volume_upper_bound(N: int, n: int) -> int:
    """Ceiling of N / n: every extracted state consumes n distinct vertices."""
    if N < 0 or n < 2:
        raise ValueError("need N >= 0 and n >= 2")
    return -(-N // n)


def _pool(g: BipartiteGraph, partition: int, cap: int) -> list[int]:
    if partition not in (1, 2):
        raise ValueError("partition must be 1 or 2")
    pool = g.ids_of(g.partition_mask(partition) & ~g.star_mask(partition))
    if len(pool) > cap:
        raise InstanceTooLarge(f"{len(pool)} non-star vertices exceeds the enumeration cap of {cap}")
    return pool


def _max_disjoint(items: list[tuple[int, int]], space: int, need: int):
    """
    Largest subset of ``items`` (id, mask) with pairwise disjoint masks.

    Returns (ids, nodes visited). Exploration is in list order and only strictly
    better families replace the incumbent, so ties resolve deterministically.
    """
    best: list[int] = []
    visited = 0

    def bound(chosen_len, cands, taken):
        free = (space & ~taken).bit_count()
        by_room = free // need if need else len(cands)
        return chosen_len + min(len(cands), by_room)

    def search(chosen, cands, taken):
        nonlocal best, visited
        visited += 1
        if len(chosen) > len(best):
            best = list(chosen)
        if bound(len(chosen), cands, taken) <= len(best):
            return
        for i, (v, r) in enumerate(cands):
            if len(chosen) + len(cands) - i <= len(best):
                return
            rest = [(u, ru) for u, ru in cands[i + 1:] if not ru & r]
            chosen.append(v)
            search(chosen, rest, taken | r)
            chosen.pop()

    search([], items, 0)
    return best, visited


def max_condition_I_family(g: BipartiteGraph, n: int, partition: int, cap: int = DEFAULT_CAP) -> OracleResult:
    pool = _pool(g, partition, cap)
    if not g.has_stars():
        return OracleResult(0, frozenset(), "I", 0)
    need = n - 1
    items = [(v, g.remote_mask(v)) for v in pool if g.remote_mask(v).bit_count() >= need]
    best, visited = _max_disjoint(items, g.partition_mask(3 - partition), need)
    return OracleResult(len(best), frozenset(best), "I", visited)


def max_condition_II_family(g: BipartiteGraph, n: int, partition: int, cap: int = DEFAULT_CAP) -> OracleResult:
    pool = _pool(g, partition, cap)
    if not g.has_stars():
        return OracleResult(0, frozenset(), "II", 0)
    need = n - 1
    remote = {v: g.remote_mask(v) for v in pool if g.remote_mask(v).bit_count() >= n}
    ids = sorted(remote)
    shared = sorted({remote[u] & remote[v] for i, u in enumerate(ids) for v in ids[i + 1:]} - {0})
    space = g.partition_mask(3 - partition)
    best, visited = [], 0
    for common in shared:
        items = [(v, remote[v] & ~common) for v in ids
                 if remote[v] & common == common and (remote[v] & ~common).bit_count() >= need]
        if len(items) <= max(len(best), 1):
            continue
        fam, seen = _max_disjoint(items, space & ~common, need)
        visited += seen
        if len(fam) > len(best):
            best = fam
    if len(best) < 2:
        return OracleResult(0, frozenset(), "II", visited)
    return OracleResult(len(best), frozenset(best), "II", visited)
