"""
Bipartite graph values with opposite-remote-set queries.

Vertices are non-negative integer ids. Internally every vertex owns one bit
of a Python integer, assigned in ascending id order when the graph is first
built and inherited by every graph derived from it through deletion, so ids
stay stable and the lowest set bit of a mask is always the smallest id.
Neighbourhoods and partitions are stored as such masks; remote-set algebra
is then a handful of integer operations.
"""

from __future__ import annotations

import operator
from collections import deque
from collections.abc import Iterable, Mapping

from .errors import (
    DuplicateVertex,
    EmptyGraph,
    GraphError,
    IntraPartitionEdge,
    MixedPartition,
    UnknownEndpoint,
    UnknownVertex,
)

__all__ = [
    "BipartiteGraph",
    "GeneralGraph",
    "build_bipartite",
    "is_remote",
    "opposite_remote_set",
    "remote_union",
    "remote_intersection",
    "star_vertices",
    "delete_vertices",
    "is_connected",
]


def _iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class BipartiteGraph:
    """
    Immutable two-colourable graph G = (P1, P2, E).

    Build instances with :func:`build_bipartite` (validating) or
    :meth:`from_edges`; the constructor itself is internal.
    """

    __slots__ = ("_ids", "_bit", "_adj", "_masks", "_hash")

    def __init__(self, ids, bit, adj, masks):
        self._ids = ids          # bit index -> vertex id (shared, never mutated)
        self._bit = bit          # vertex id -> bit index (shared, never mutated)
        self._adj = adj          # vertex id -> neighbour mask
        self._masks = masks      # (P1 mask, P2 mask)
        self._hash = None

    @classmethod
    def from_edges(cls, p1: Iterable[int], p2: Iterable[int], edges: Iterable[tuple[int, int]]):
        return build_bipartite(p1, p2, edges)

    # -- basic views -------------------------------------------------------

    @property
    def p1(self) -> frozenset[int]:
        return frozenset(self.ids_of(self._masks[0]))

    @property
    def p2(self) -> frozenset[int]:
        return frozenset(self.ids_of(self._masks[1]))

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self._adj)

    @property
    def adjacency(self) -> dict[int, frozenset[int]]:
        return {v: frozenset(self.ids_of(m)) for v, m in self._adj.items()}

    def __len__(self) -> int:
        return len(self._adj)

    def __contains__(self, v) -> bool:
        return v in self._adj

    def partition(self, k: int) -> frozenset[int]:
        return self.p1 if k == 1 else self.p2

    def partition_of(self, v: int) -> int:
        self._require(v)
        return 1 if self._masks[0] >> self._bit[v] & 1 else 2

    def neighbors(self, v: int) -> frozenset[int]:
        self._require(v)
        return frozenset(self.ids_of(self._adj[v]))

    def degree(self, v: int) -> int:
        self._require(v)
        return self._adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        self._require(u)
        self._require(v)
        return bool(self._adj[u] >> self._bit[v] & 1)

    def edges(self) -> list[tuple[int, int]]:
        """Sorted edge list, each pair written (P1 endpoint, P2 endpoint)."""
        out = []
        for u in sorted(self.ids_of(self._masks[0])):
            for v in self.ids_of(self._adj[u]):
                out.append((u, v))
        return out

    @property
    def edge_count(self) -> int:
        m1 = self._masks[0]
        return sum(self._adj[v].bit_count() for v in self.ids_of(m1))

    # -- mask helpers (used by the algorithm modules) ------------------------

    def ids_of(self, mask: int) -> list[int]:
        """Vertex ids of a mask, ascending."""
        ids = self._ids
        return [ids[b] for b in _iter_bits(mask)]

    def mask_of(self, vertices: Iterable[int]) -> int:
        mask = 0
        for v in vertices:
            self._require(v)
            mask |= 1 << self._bit[v]
        return mask

    def bit(self, v: int) -> int:
        return 1 << self._bit[v]

    def partition_mask(self, k: int) -> int:
        return self._masks[k - 1]

    def opposite_mask(self, v: int) -> int:
        return self._masks[1] if self._masks[0] >> self._bit[v] & 1 else self._masks[0]

    def remote_mask(self, v: int) -> int:
        """Opposite remote set of ``v`` as a mask."""
        return self.opposite_mask(v) & ~self._adj[v]

    def star_mask(self, k: int) -> int:
        own, other = self._masks[k - 1], self._masks[2 - k]
        mask = 0
        for b in _iter_bits(own):
            if self._adj[self._ids[b]] & other == other:
                mask |= 1 << b
        return mask

    def has_stars(self) -> bool:
        return bool(self.star_mask(1)) and bool(self.star_mask(2))

    def without_mask(self, mask: int) -> "BipartiteGraph":
        """Induced subgraph on the vertices outside ``mask`` (no validation)."""
        if not mask:
            return self
        keep = ~mask
        ids = self._ids
        gone = {ids[b] for b in _iter_bits(mask)}
        adj = {v: a & keep for v, a in self._adj.items() if v not in gone}
        masks = (self._masks[0] & keep, self._masks[1] & keep)
        return BipartiteGraph(self._ids, self._bit, adj, masks)

    def _require(self, v):
        if v not in self._adj:
            raise UnknownVertex(f"vertex {v!r} is not in the graph")

    # -- value semantics --------------------------------------------------------

    def _key(self):
        return (tuple(sorted(self.p1)), tuple(sorted(self.p2)), tuple(self.edges()))

    def __eq__(self, other):
        if not isinstance(other, BipartiteGraph):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self):
        return (f"BipartiteGraph(p1={sorted(self.p1)}, p2={sorted(self.p2)}, "
                f"m={self.edge_count})")


def _as_id(v) -> int:
    try:
        v = operator.index(v)
    except TypeError:
        raise UnknownVertex(f"vertex id must be a non-negative integer, got {v!r}") from None
    if v < 0:
        raise UnknownVertex(f"vertex id must be a non-negative integer, got {v!r}")
    return v


def build_bipartite(p1: Iterable[int], p2: Iterable[int], edges: Iterable[tuple[int, int]]) -> BipartiteGraph:
    """
    Validate and build a bipartite graph.

    Raises DuplicateVertex, IntraPartitionEdge or UnknownEndpoint. Repeated
    edges are merged; an edge may be given in either orientation.
    """
    p1, p2 = [_as_id(v) for v in p1], [_as_id(v) for v in p2]
    seen = set()
    for v in p1 + p2:
        if v in seen:
            raise DuplicateVertex(f"vertex {v} listed twice")
        seen.add(v)
    ids = sorted(seen)
    bit = {v: i for i, v in enumerate(ids)}
    side = {v: 0 for v in p1}
    side.update({v: 1 for v in p2})
    adj = {v: 0 for v in ids}
    for e in edges:
        u, v = e
        u, v = _as_id(u), _as_id(v)
        for x in (u, v):
            if x not in side:
                raise UnknownEndpoint(f"edge ({u}, {v}) references unknown vertex {x}")
        if side[u] == side[v]:
            raise IntraPartitionEdge(f"edge ({u}, {v}) joins two vertices of partition P{side[u] + 1}")
        adj[u] |= 1 << bit[v]
        adj[v] |= 1 << bit[u]
    m1 = sum(1 << bit[v] for v in p1)
    m2 = sum(1 << bit[v] for v in p2)
    return BipartiteGraph(ids, bit, adj, (m1, m2))


class GeneralGraph:
    """Simple undirected graph (no loops, no multi-edges)."""

    __slots__ = ("_adj",)

    def __init__(self, adjacency: Mapping[int, Iterable[int]]):
        adj = {v: frozenset(ns) for v, ns in adjacency.items()}
        for v, ns in adj.items():
            if v in ns:
                raise GraphError(f"self-loop at vertex {v}")
            for u in ns:
                if u not in adj:
                    raise UnknownEndpoint(f"edge ({v}, {u}) references unknown vertex {u}")
                if v not in adj[u]:
                    raise UnknownEndpoint(f"adjacency is not symmetric for ({v}, {u})")
        self._adj = adj

    @classmethod
    def from_edges(cls, vertices: Iterable[int], edges: Iterable[tuple[int, int]]):
        adj = {v: set() for v in vertices}
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            for x in (u, v):
                if x not in adj:
                    raise UnknownEndpoint(f"edge ({u}, {v}) references unknown vertex {x}")
            adj[u].add(v)
            adj[v].add(u)
        return cls(adj)

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self._adj)

    @property
    def adjacency(self) -> dict[int, frozenset[int]]:
        return dict(self._adj)

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def edges(self) -> list[tuple[int, int]]:
        return sorted((u, v) for u, ns in self._adj.items() for v in ns if u < v)

    @property
    def edge_count(self) -> int:
        return sum(len(ns) for ns in self._adj.values()) // 2

    def __len__(self):
        return len(self._adj)

    def __eq__(self, other):
        if not isinstance(other, GeneralGraph):
            return NotImplemented
        return self._adj == other._adj

    def __repr__(self):
        return f"GeneralGraph(n={len(self)}, m={self.edge_count})"


# -- queries -----------------------------------------------------------------


def is_remote(g: BipartiteGraph, u: int, v: int) -> bool:
    """True iff u and v are distinct and not adjacent."""
    if u == v:
        g._require(u)
        return False
    return not g.has_edge(u, v)


def opposite_remote_set(g: BipartiteGraph, v: int) -> frozenset[int]:
    g._require(v)
    return frozenset(g.ids_of(g.remote_mask(v)))


def _same_partition_mask(g: BipartiteGraph, family) -> int:
    mask = g.mask_of(family)
    if mask & g.partition_mask(1) and mask & g.partition_mask(2):
        raise MixedPartition(f"family {sorted(family)} spans both partitions")
    return mask


def remote_union(g: BipartiteGraph, family: Iterable[int]) -> frozenset[int]:
    family = list(family)
    _same_partition_mask(g, family)
    acc = 0
    for v in family:
        acc |= g.remote_mask(v)
    return frozenset(g.ids_of(acc))


def remote_intersection(g: BipartiteGraph, family: Iterable[int]) -> frozenset[int]:
    """Common opposite remote set; the empty family maps to the empty set."""
    family = list(family)
    _same_partition_mask(g, family)
    if not family:
        return frozenset()
    acc = -1
    for v in family:
        acc &= g.remote_mask(v)
    return frozenset(g.ids_of(acc))


def star_vertices(g: BipartiteGraph, partition: int) -> frozenset[int]:
    """Vertices of ``partition`` (1 or 2) adjacent to the whole other partition."""
    if partition not in (1, 2):
        raise ValueError("partition must be 1 or 2")
    return frozenset(g.ids_of(g.star_mask(partition)))


def delete_vertices(g: BipartiteGraph, vertices: Iterable[int]) -> BipartiteGraph:
    """Induced subgraph on V minus ``vertices``; ``g`` itself is untouched."""
    return g.without_mask(g.mask_of(vertices))


def is_connected(g) -> bool:
    adj = g.adjacency
    if not adj:
        raise EmptyGraph("connectivity is undefined for the empty graph")
    start = min(adj)
    seen = {start}
    todo = deque([start])
    while todo:
        v = todo.popleft()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                todo.append(u)
    return len(seen) == len(adj)
