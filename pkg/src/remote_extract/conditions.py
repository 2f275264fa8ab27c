"""
Sufficient extraction conditions on families of same-partition vertices.

Condition I: pairwise disjoint opposite remote sets, each of size >= n-1.
Condition II: all pairwise intersections of the remote sets equal one common
nonempty set I, and the residuals N(v) \\ I are pairwise disjoint with size
>= n-1. Both also require a star vertex in each partition.
"""

from __future__ import annotations

import enum
from collections.abc import Iterable

import numpy as np

from .errors import DegenerateGraph, FamilyTooSmall, MixedPartition
from .graph_core import BipartiteGraph

__all__ = [
    "StarPolicy",
    "check_condition_I",
    "check_condition_II",
    "pair_compatible",
    "ensure_star_vertices",
]


class StarPolicy(enum.Enum):
    RANDOM = "random"
    MIN_REMOTE_SET = "min-remote-set"


def _family_masks(g: BipartiteGraph, family, n: int) -> list[int]:
    if n < 2:
        raise ValueError(f"GHZ mass must be >= 2, got {n}")
    family = list(family)
    mask = g.mask_of(family)
    if mask & g.partition_mask(1) and mask & g.partition_mask(2):
        raise MixedPartition(f"family {sorted(family)} spans both partitions")
    return [g.remote_mask(v) for v in family]


def disjoint_ok(remotes: list[int], need: int) -> bool:
    """Condition I on precomputed remote masks (stars checked by the caller)."""
    seen = 0
    for r in remotes:
        if r.bit_count() < need or r & seen:
            return False
        seen |= r
    return True


def shared_ok(remotes: list[int], need: int) -> int:
    """
    Condition II on precomputed remote masks; returns the shared intersection
    mask when it holds and 0 otherwise.
    """
    if len(remotes) < 2:
        return 0
    common = -1
    for r in remotes:
        common &= r
    if not common:
        return 0
    seen = 0
    for r in remotes:
        residual = r & ~common
        if residual.bit_count() < need or residual & seen:
            return 0
        seen |= residual
    return common


def check_condition_I(g: BipartiteGraph, family: Iterable[int], n: int) -> bool:
    remotes = _family_masks(g, family, n)
    return g.has_stars() and disjoint_ok(remotes, n - 1)


def check_condition_II(g: BipartiteGraph, family: Iterable[int], n: int) -> bool:
    family = list(family)
    if len(family) < 2:
        raise FamilyTooSmall(f"condition II needs at least two vertices, got {len(family)}")
    remotes = _family_masks(g, family, n)
    return g.has_stars() and bool(shared_ok(remotes, n - 1))


def pair_compatible(g: BipartiteGraph, u: int, v: int, n: int) -> bool:
    """True iff {u, v} satisfies condition I or condition II."""
    if u == v:
        raise ValueError("pair_compatible needs two distinct vertices")
    remotes = _family_masks(g, (u, v), n)
    if not g.has_stars():
        return False
    return disjoint_ok(remotes, n - 1) or bool(shared_ok(remotes, n - 1))


def promote_stars(g: BipartiteGraph, policy: StarPolicy, rng):
    """Star repair with bookkeeping: returns (graph, [(partition, vertex, removed ids)])."""
    if not g.partition_mask(1) or not g.partition_mask(2):
        raise DegenerateGraph("both partitions must be nonempty")
    steps = []
    for k in (1, 2):
        if g.star_mask(k):
            continue
        pool = g.ids_of(g.partition_mask(k))
        if policy is StarPolicy.RANDOM:
            if rng is None:
                raise ValueError("StarPolicy.RANDOM needs an rng")
            v = pool[int(rng.integers(len(pool)))]
        else:
            v = min(pool, key=lambda x: (g.remote_mask(x).bit_count(), x))
        doomed = g.remote_mask(v)
        if doomed == g.partition_mask(3 - k):
            raise DegenerateGraph(f"promoting {v} to star would empty partition P{3 - k}")
        steps.append((k, v, frozenset(g.ids_of(doomed))))
        g = g.without_mask(doomed)
    return g, steps


def ensure_star_vertices(g: BipartiteGraph, policy: StarPolicy = StarPolicy.RANDOM,
                         rng: np.random.Generator | None = None):
    """
    Give each partition a star vertex by deleting one vertex's remote set.

    Partitions are handled in order P1, P2. Returns ``(graph, (chosen1, chosen2))``
    where ``chosen_k`` is the vertex promoted to star in partition k, or None
    when that partition already had one.
    """
    g, steps = promote_stars(g, policy, rng)
    chosen = [None, None]
    for k, v, _ in steps:
        chosen[k - 1] = v
    return g, tuple(chosen)
