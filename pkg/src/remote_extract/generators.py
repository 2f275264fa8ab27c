"""
Random topologies for the benchmark harness.

``random_connected_bipartite`` draws connected two-colourable graphs with an
exact edge count. ``internet_like_topology`` builds 50-node-style general
graphs from four model families, and ``bipartite_subgraph`` cuts a connected
induced two-colourable piece out of them.
"""

from __future__ import annotations

import enum
from bisect import bisect_right
from collections import deque
from itertools import accumulate
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import EdgeCountOutOfRange, NoBipartiteSubgraphFound, UnachievableDensity
from .graph_core import BipartiteGraph, GeneralGraph, build_bipartite, is_connected

__all__ = [
    "ModelKind",
    "TopologyModel",
    "edge_bounds",
    "random_connected_bipartite",
    "internet_like_topology",
    "bipartite_subgraph",
]


def edge_bounds(p1_size: int, p2_size: int) -> tuple[int, int]:
    """Edge counts admitting a connected bipartite graph on the given partitions."""
    return p1_size + p2_size - 1, p1_size * p2_size


def random_connected_bipartite(p1_size: int, p2_size: int, m: int, rng: np.random.Generator) -> BipartiteGraph:
    """
    Connected bipartite graph with exactly ``m`` edges.

    P1 gets ids ``0..p1_size-1`` and P2 ``p1_size..p1_size+p2_size-1``. A random
    spanning tree across the bipartition comes first (every vertex after the
    first edge hooks onto a random already-placed vertex of the other side),
    then the remaining edges are drawn uniformly without replacement from the
    unused cross pairs.
    """
    if p1_size < 1 or p2_size < 1:
        raise ValueError("partition sizes must be >= 1")
    lo, hi = edge_bounds(p1_size, p2_size)
    if not lo <= m <= hi:
        raise EdgeCountOutOfRange(m, lo, hi)
    left = [int(x) for x in rng.permutation(p1_size)]
    right = [p1_size + int(x) for x in rng.permutation(p2_size)]
    placed = ([left[0]], [right[0]])
    edges = {(left[0], right[0])}
    rest = [(0, v) for v in left[1:]] + [(1, v) for v in right[1:]]
    for i in rng.permutation(len(rest)):
        side, v = rest[i]
        other = placed[1 - side]
        u = other[int(rng.integers(len(other)))]
        edges.add((v, u) if side == 0 else (u, v))
        placed[side].append(v)

    extra = m - len(edges)
    if extra:
        taken = np.zeros(p1_size * p2_size, dtype=bool)
        for u, v in edges:
            taken[u * p2_size + (v - p1_size)] = True
        free = np.flatnonzero(~taken)
        for slot in rng.choice(free, size=extra, replace=False):
            u, v = divmod(int(slot), p2_size)
            edges.add((u, p1_size + v))
    return build_bipartite(range(p1_size), range(p1_size, p1_size + p2_size), sorted(edges))


# -- general topologies ---------------------------------------------------------


class ModelKind(enum.Enum):
    RANDOM_BIPARTITE = "bipartite"
    PREFERENTIAL_ATTACHMENT = "as"      # AS-level Internet
    SMALL_WORLD_WEB = "www"             # World Wide Web
    DUPLICATION_DIVERGENCE = "ppi"      # protein-protein interaction


@dataclass(frozen=True)
class TopologyModel:
    """
    Model family plus its free parameter.

    ``rewire_prob`` drives the small-world model; ``retention`` the
    duplication-divergence model (None = calibrated to the target edge count).
    The other two families hit the target edge count by construction.
    """

    kind: ModelKind
    rewire_prob: float = 0.3
    retention: float | None = None

    def __post_init__(self):
        if not 0.0 <= self.rewire_prob <= 1.0:
            raise ValueError("rewire_prob must lie in [0, 1]")
        if self.retention is not None and not 0.0 <= self.retention <= 1.0:
            raise ValueError("retention must lie in [0, 1]")


def _check_density(node_count: int, target_edges: int):
    if node_count < 2:
        raise UnachievableDensity("need at least two nodes")
    lo, hi = node_count - 1, node_count * (node_count - 1) // 2
    if not lo <= target_edges <= hi:
        raise UnachievableDensity(
            f"{target_edges} edges impossible for a connected simple graph on {node_count} nodes "
            f"(range [{lo}, {hi}])")


def _connected(adj) -> bool:
    start = next(iter(adj))
    seen = {start}
    todo = deque([start])
    while todo:
        for u in adj[todo.popleft()]:
            if u not in seen:
                seen.add(u)
                todo.append(u)
    return len(seen) == len(adj)


def _preferential(node_count, target_edges, rng):
    adj = {v: set() for v in range(node_count)}
    adj[0].add(1)
    adj[1].add(0)
    if node_count == 2:
        return adj
    # every later node brings >= 1 edge; spread the surplus, capped by how many
    # earlier nodes exist
    counts = {t: 1 for t in range(2, node_count)}
    surplus = target_edges - 1 - (node_count - 2)
    while surplus:
        for t in range(node_count - 1, 1, -1):
            if surplus and counts[t] < t:
                counts[t] += 1
                surplus -= 1
    for t in range(2, node_count):
        weights = np.array([len(adj[u]) for u in range(t)], dtype=float)
        picks = rng.choice(t, size=counts[t], replace=False, p=weights / weights.sum())
        for u in picks:
            adj[t].add(int(u))
            adj[int(u)].add(t)
    return adj


def _small_world(node_count, target_edges, rewire_prob, rng):
    adj = {v: set() for v in range(node_count)}
    placed, d = 0, 1
    while placed < target_edges:
        for i in range(node_count):
            j = (i + d) % node_count
            if placed == target_edges:
                break
            if j != i and j not in adj[i]:
                adj[i].add(j)
                adj[j].add(i)
                placed += 1
        d += 1
    edges = sorted((u, v) for u in adj for v in adj[u] if u < v)
    for idx in rng.permutation(len(edges)):
        if rng.random() >= rewire_prob:
            continue
        u, v = edges[idx]
        if v not in adj[u]:
            continue
        options = [w for w in range(node_count) if w != u and w not in adj[u]]
        if not options:
            continue
        weights = np.array([len(adj[w]) + 1.0 for w in options])
        w = options[int(rng.choice(len(options), p=weights / weights.sum()))]
        adj[u].discard(v)
        adj[v].discard(u)
        adj[u].add(w)
        adj[w].add(u)
        if not _connected(adj):
            adj[u].discard(w)
            adj[w].discard(u)
            adj[u].add(v)
            adj[v].add(u)
    return adj


def _duplicate(node_count, retention, rng):
    adj = {0: {1}, 1: {0}}
    for t in range(2, node_count):
        u = int(rng.integers(t))
        kept = {w for w in sorted(adj[u]) if rng.random() < retention}
        if rng.random() < retention or not kept:
            kept.add(u)
        adj[t] = kept
        for w in kept:
            adj[w].add(t)
    return adj


@lru_cache(maxsize=None)
def _calibrated_retention(node_count: int, target_edges: int) -> float:
    """Retention probability whose mean edge count matches the target (bisection)."""
    def mean_edges(q):
        rng = np.random.default_rng(12345)
        return np.mean([sum(map(len, _duplicate(node_count, q, rng).values())) / 2 for _ in range(24)])

    lo, hi = 0.0, 1.0
    for _ in range(18):
        mid = (lo + hi) / 2
        if mean_edges(mid) < target_edges:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def _trim_to(adj, target_edges, rng):
    """Drop non-bridge edges or add triadic-closure edges until the count is exact."""
    count = sum(map(len, adj.values())) // 2
    nodes = sorted(adj)
    while count > target_edges:
        edges = sorted((u, v) for u in adj for v in adj[u] if u < v)
        for idx in rng.permutation(len(edges)):
            u, v = edges[idx]
            adj[u].discard(v)
            adj[v].discard(u)
            if _connected(adj):
                count -= 1
                break
            adj[u].add(v)
            adj[v].add(u)
        else:
            raise UnachievableDensity("cannot remove edges without disconnecting")
    while count < target_edges:
        v = nodes[int(rng.integers(len(nodes)))]
        closing = sorted({w for u in adj[v] for w in adj[u]} - adj[v] - {v})
        if not closing:
            closing = [w for w in nodes if w != v and w not in adj[v]]
            if not closing:
                continue
        w = closing[int(rng.integers(len(closing)))]
        adj[v].add(w)
        adj[w].add(v)
        count += 1
    return adj


def internet_like_topology(model: TopologyModel, node_count: int, target_edges: int,
                           rng: np.random.Generator) -> GeneralGraph:
    """
    Connected general graph with ``node_count`` nodes and exactly ``target_edges``
    edges, drawn from ``model``'s family.
    """
    _check_density(node_count, target_edges)
    kind = model.kind
    if kind is ModelKind.RANDOM_BIPARTITE:
        a = node_count // 2
        try:
            g = random_connected_bipartite(a, node_count - a, target_edges, rng)
        except EdgeCountOutOfRange as exc:
            raise UnachievableDensity(str(exc)) from None
        return GeneralGraph(g.adjacency)
    if kind is ModelKind.PREFERENTIAL_ATTACHMENT:
        adj = _preferential(node_count, target_edges, rng)
    elif kind is ModelKind.SMALL_WORLD_WEB:
        adj = _small_world(node_count, target_edges, model.rewire_prob, rng)
    else:
        q = model.retention
        if q is None:
            q = _calibrated_retention(node_count, target_edges)
        adj = _trim_to(_duplicate(node_count, q, rng), target_edges, rng)
    return GeneralGraph(adj)


# -- bipartite pieces of general graphs ---------------------------------------------


def _mask_connected(nbr: list[int], keep: int) -> bool:
    if not keep:
        return True
    seen = keep & -keep
    while True:
        grown = seen
        for i in _bits(seen):
            grown |= nbr[i] & keep
        if grown == seen:
            return seen == keep
        seen = grown


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _grow_bipartite(nbr: list[int], rng):
    """One randomized greedy growth; returns (colour-0 mask, colour-1 mask)."""
    start = int(rng.integers(len(nbr)))
    col = [1 << start, 0]
    frontier, blocked = nbr[start], 0
    while frontier:
        cands = list(_bits(frontier))
        inside = col[0] | col[1]
        # favour vertices tied most strongly to the current piece
        weights = list(accumulate((nbr[u] & inside).bit_count() ** 4 for u in cands))
        v = cands[bisect_right(weights, rng.random() * weights[-1])]
        frontier &= ~(1 << v)
        touch0, touch1 = nbr[v] & col[0], nbr[v] & col[1]
        if touch0 and touch1:
            blocked |= 1 << v
            continue
        col[1 if touch0 else 0] |= 1 << v
        frontier |= nbr[v] & ~(col[0] | col[1] | blocked)
    return col[0], col[1]


def _truncate(nbr: list[int], keep: int, target_size: int) -> int:
    while keep.bit_count() > target_size:
        for v in sorted(_bits(keep), key=lambda x: ((nbr[x] & keep).bit_count(), x)):
            rest = keep & ~(1 << v)
            if _mask_connected(nbr, rest):
                keep = rest
                break
        else:  # pragma: no cover - a connected graph always has a non-cut vertex
            raise NoBipartiteSubgraphFound("could not shrink without disconnecting")
    return keep


def bipartite_subgraph(g: GeneralGraph, target_size: int, rng: np.random.Generator,
                       attempts: int = 64) -> BipartiteGraph:
    """
    Connected induced two-colourable subgraph with exactly ``target_size`` vertices.

    Each attempt grows a connected two-coloured vertex set from a random start,
    admitting a frontier vertex whenever its coloured neighbours agree on a
    colour. Attempts reaching ``target_size`` are shrunk to size by dropping
    lowest-degree non-cut vertices; the densest result over all attempts wins
    (earliest attempt on ties). P1 is the colour class holding the smallest id.
    """
    if not 1 <= target_size <= len(g):
        raise ValueError(f"target_size must lie in [1, {len(g)}]")
    order = sorted(g.vertices)
    index = {v: i for i, v in enumerate(order)}
    nbr = [sum(1 << index[u] for u in g.neighbors(v)) for v in order]
    best, best_edges, largest = None, -1, 0
    for _ in range(attempts):
        c0, c1 = _grow_bipartite(nbr, rng)
        size = (c0 | c1).bit_count()
        largest = max(largest, size)
        if size < target_size:
            continue
        keep = _truncate(nbr, c0 | c1, target_size)
        edges = sum((nbr[i] & keep & c1).bit_count() for i in _bits(keep & c0))
        if edges > best_edges:
            best, best_edges = (keep & c0, keep & c1), edges
    if best is None:
        raise NoBipartiteSubgraphFound(
            f"largest connected bipartite piece found had {largest} vertices, wanted {target_size}")
    a_mask, b_mask = best
    if (b_mask & -b_mask) < (a_mask & -a_mask):
        a_mask, b_mask = b_mask, a_mask
    p1 = [order[i] for i in _bits(a_mask)]
    p2 = [order[i] for i in _bits(b_mask)]
    edges = [(order[i], order[j]) for i in _bits(a_mask) for j in _bits(nbr[i] & b_mask)]
    return build_bipartite(p1, p2, edges)
