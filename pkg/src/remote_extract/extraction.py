"""
Greedy extraction of remote GHZ states from a bipartite graph state.

One run has three stages:

1. star repair: make sure each partition has a star vertex;
2. seeding: grow a disjoint-remote family and a shared-intersection family
   from random permutations of the host partition and keep the larger one;
3. expansion: repeatedly add (or swap in) candidates whose remote set reaches
   outside the members' union, deleting the overlapping remote vertices.

The members returned always have pairwise disjoint opposite remote sets of
size >= n-1 in the final graph, and each member together with the n-1
smallest-id vertices of its remote set forms one extractable n-qubit GHZ group.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .conditions import StarPolicy, disjoint_ok, promote_stars
from .errors import (
    DegenerateGraph,
    InvalidMembers,
    IterationCapExceeded,
    MixedPartition,
    NoStarVertex,
)
from .graph_core import BipartiteGraph, delete_vertices, is_connected

__all__ = [
    "HostPartition",
    "CandidatePolicy",
    "StepKind",
    "ExtractionConfig",
    "SeedFamilies",
    "CandidateReport",
    "TraceStep",
    "ExtractionResult",
    "Verdict",
    "seed_families",
    "find_a",
    "expand",
    "remote_extraction",
    "materialize_ghz",
    "verify_result",
]


class HostPartition(enum.Enum):
    AUTO = "auto"
    P1 = "p1"
    P2 = "p2"
    BOTH = "both"


class CandidatePolicy(enum.Enum):
    FEWEST_DELETIONS = "fewest-deletions"
    UNIFORM = "uniform"


class StepKind(enum.Enum):
    STAR_REPAIR = "StarRepair"
    SEED_A = "SeedA"
    SEED_B = "SeedB"
    DIRECT_ADD = "DirectAdd"
    OVERLAP_ADD = "OverlapAdd"
    SWAP = "Swap"
    GUARD_REJECT = "GuardReject"


@dataclass(frozen=True)
class ExtractionConfig:
    n: int = 2
    seed: int = 0
    restarts: int = 1
    host_partition: HostPartition = HostPartition.AUTO
    star_policy: StarPolicy = StarPolicy.RANDOM
    candidate_policy: CandidatePolicy = CandidatePolicy.FEWEST_DELETIONS

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"GHZ mass n must be >= 2, got {self.n}")
        if self.restarts < 1:
            raise ValueError(f"restarts must be >= 1, got {self.restarts}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit non-negative integer")


@dataclass(frozen=True)
class SeedFamilies:
    a_g: frozenset
    b_g: frozenset
    shared: frozenset = frozenset()  # common remote set of b_g


@dataclass(frozen=True)
class CandidateReport:
    candidates: frozenset
    a_map: dict
    abar2a: dict
    b2a: dict


@dataclass(frozen=True)
class TraceStep:
    kind: StepKind
    focus: int | None
    removed_vertices: frozenset
    members_after: frozenset


@dataclass(frozen=True)
class ExtractionResult:
    members: frozenset
    volume: int
    seed_volume: int
    n: int
    ghz_groups: tuple
    final_graph: BipartiteGraph
    trace: tuple
    host_partition: int = 1
    restart: int = 0
    original_size: int = 0

    @property
    def deleted_count(self) -> int:
        return self.original_size - len(self.final_graph)


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


# -- stage 2 -----------------------------------------------------------------


def _host_nonstar(g: BipartiteGraph, k: int) -> list[int]:
    return g.ids_of(g.partition_mask(k) & ~g.star_mask(k))


def seed_families(g: BipartiteGraph, n: int, partition: int, rng: np.random.Generator) -> SeedFamilies:
    """
    Grow both seed families greedily along two independent random permutations
    of the non-star vertices of ``partition``.

    A shared-intersection family with fewer than two members is returned empty:
    a single vertex never satisfies that condition.
    """
    if not g.has_stars():
        raise NoStarVertex("seeding needs a star vertex in each partition")
    need = n - 1
    pool = _host_nonstar(g, partition)
    remote = {v: g.remote_mask(v) for v in pool}
    perm_a = rng.permutation(len(pool))
    perm_b = rng.permutation(len(pool))

    a_g, taken = [], 0
    for i in perm_a:
        v = pool[i]
        r = remote[v]
        if r.bit_count() >= need and not r & taken:
            a_g.append(v)
            taken |= r

    b_g, common, taken, waiting = [], 0, 0, []
    for i in perm_b:
        v = pool[i]
        r = remote[v]
        if r.bit_count() < n:
            continue  # no room for a shared part plus n-1 private vertices
        if len(b_g) >= 2:
            residual = r & ~common
            if r & common == common and residual.bit_count() >= need and not residual & taken:
                b_g.append(v)
                taken |= residual
            continue
        for u in waiting:
            c = remote[u] & r
            if c and (remote[u] & ~c).bit_count() >= need and (r & ~c).bit_count() >= need:
                b_g, common = [u, v], c
                taken = (remote[u] | r) & ~c
                break
        else:
            waiting.append(v)

    shared = frozenset(g.ids_of(common)) if b_g else frozenset()
    return SeedFamilies(frozenset(a_g), frozenset(b_g), shared)


# -- stage 3 -----------------------------------------------------------------


def _scan(g: BipartiteGraph, k: int, need: int, members, union: int):
    """Candidate scan; maps candidate -> (abar2a, b2a, admissible)."""
    mrem = [(w, g.remote_mask(w)) for w in sorted(members)]
    member_mask = g.mask_of(members)
    out = {}
    for v in g.ids_of(g.partition_mask(k) & ~g.star_mask(k) & ~member_mask):
        r = g.remote_mask(v)
        if r.bit_count() < need or not r & ~union:
            continue
        abar, b2a = [], []
        for w, rw in mrem:
            if rw & r:
                b2a.append(w)
                if not rw & ~r:
                    abar.append(w)
        ok = len(abar) <= 1
        if ok:
            for w, rw in mrem:
                if w in b2a and w not in abar:
                    c = rw & r
                    if (rw & ~c).bit_count() < need or (r & ~c).bit_count() < need:
                        ok = False
                        break
        out[v] = (abar, b2a, ok)
    return out


def _member_partition(g: BipartiteGraph, members, partition):
    if members:
        sides = {g.partition_of(v) for v in members}
        if len(sides) > 1:
            raise MixedPartition("members span both partitions")
        side = sides.pop()
        if partition is not None and partition != side:
            raise MixedPartition(f"members lie in P{side}, not P{partition}")
        return side
    if partition is None:
        raise ValueError("partition is required when members is empty")
    return partition


def _check_members(g: BipartiteGraph, members, n: int):
    remotes = [g.remote_mask(v) for v in sorted(members)]
    if not disjoint_ok(remotes, n - 1):
        raise InvalidMembers(f"members {sorted(members)} do not have disjoint remote sets of size >= {n - 1}")


def find_a(g: BipartiteGraph, n: int, members, partition: int | None = None) -> CandidateReport:
    """
    Candidate search around the current members.

    ``candidates`` are non-member, non-star host vertices with at least n-1
    remote vertices, some of them outside the members' union. ``abar2a[v]`` are
    the members whose remote set lies inside v's; ``b2a[v]`` the members whose
    remote set meets v's. ``a_map`` keeps the candidates with at most one
    contained member and a shared-intersection pairing with every other
    overlapping member, mapped to ``b2a[v]``.
    """
    members = frozenset(members)
    for v in members:
        g._require(v)
    k = _member_partition(g, members, partition)
    _check_members(g, members, n)
    union = 0
    for w in members:
        union |= g.remote_mask(w)
    scan = _scan(g, k, n - 1, members, union)
    return CandidateReport(
        candidates=frozenset(scan),
        a_map={v: frozenset(b) for v, (_, b, ok) in scan.items() if ok},
        abar2a={v: frozenset(a) for v, (a, _, _) in scan.items()},
        b2a={v: frozenset(b) for v, (_, b, _) in scan.items()},
    )


def expand(g: BipartiteGraph, n: int, members, rng: np.random.Generator | None = None,
           policy: CandidatePolicy = CandidatePolicy.FEWEST_DELETIONS,
           partition: int | None = None):
    """
    Run the expansion loop from ``members``; returns (graph, members, trace).

    An overlap-add or swap is committed only if every member of the updated
    family keeps at least n-1 remote vertices in the reduced graph; otherwise
    the candidate is set aside until the next committed change.
    """
    if policy is CandidatePolicy.UNIFORM and rng is None:
        raise ValueError("CandidatePolicy.UNIFORM needs an rng")
    members = set(members)
    k = _member_partition(g, members, partition)
    _check_members(g, members, n)
    if not g.has_stars():
        raise NoStarVertex("expansion needs a star vertex in each partition")
    need = n - 1
    trace = []
    cap = 2 * len(g) + 1
    commits = 0
    rejected = set()
    while True:
        union = 0
        for w in members:
            union |= g.remote_mask(w)
        scan = _scan(g, k, need, members, union)
        pool = {v: s for v, s in scan.items() if s[2] and v not in rejected}
        if not pool:
            break
        commits += 1
        if commits > cap:
            raise IterationCapExceeded(f"expansion exceeded {cap} committed steps")
        direct = sorted(v for v, (_, b2a, _) in pool.items() if not b2a)
        if direct:
            if policy is CandidatePolicy.UNIFORM:
                v = direct[int(rng.integers(len(direct)))]
            else:
                v = min(direct, key=lambda x: (g.remote_mask(x).bit_count(), x))
            members.add(v)
            trace.append(TraceStep(StepKind.DIRECT_ADD, v, frozenset(), frozenset(members)))
            rejected.clear()
            continue

        order = sorted(pool)
        if policy is CandidatePolicy.UNIFORM:
            v = order[int(rng.integers(len(order)))]
        else:
            v = min(order, key=lambda x: (len(pool[x][0]), (g.remote_mask(x) & union).bit_count(), x))
        abar = pool[v][0]
        w = abar[0] if len(abar) == 1 else None
        doomed = g.remote_mask(v) & union
        if w is not None:
            doomed &= ~g.remote_mask(w)
            doomed |= g.bit(w)
        g2 = g.without_mask(doomed)
        new_members = (members | {v}) - {w}
        if any(g2.remote_mask(u).bit_count() < need for u in new_members):
            rejected.add(v)
            commits -= 1  # rejections are bounded by the pool, not the cap
            trace.append(TraceStep(StepKind.GUARD_REJECT, v, frozenset(), frozenset(members)))
            continue
        assert disjoint_ok([g2.remote_mask(u) for u in sorted(new_members)], need)
        removed = frozenset(g.ids_of(doomed))
        g, members = g2, new_members
        kind = StepKind.SWAP if w is not None else StepKind.OVERLAP_ADD
        trace.append(TraceStep(kind, v, removed, frozenset(members)))
        rejected.clear()
    return g, frozenset(members), trace


# -- full pipeline ---------------------------------------------------------------


def _resolve_hosts(g: BipartiteGraph, host: HostPartition) -> list[int]:
    if host is HostPartition.P1:
        return [1]
    if host is HostPartition.P2:
        return [2]
    if host is HostPartition.BOTH:
        return [1, 2]
    n1 = g.partition_mask(1).bit_count()
    n2 = g.partition_mask(2).bit_count()
    return [1] if n1 <= n2 else [2]


def _single_run(g: BipartiteGraph, cfg: ExtractionConfig, k: int, rng, restart: int) -> ExtractionResult:
    n = cfg.n
    g0 = g
    g, repairs = promote_stars(g, cfg.star_policy, rng)
    trace = [TraceStep(StepKind.STAR_REPAIR, v, removed, frozenset()) for _, v, removed in repairs]
    seeds = seed_families(g, n, k, rng)
    if len(seeds.b_g) > len(seeds.a_g):
        removed = g.mask_of(seeds.shared)
        trace.append(TraceStep(StepKind.SEED_B, None, frozenset(seeds.shared), seeds.b_g))
        g = g.without_mask(removed)
        members = seeds.b_g
    else:
        trace.append(TraceStep(StepKind.SEED_A, None, frozenset(), seeds.a_g))
        members = seeds.a_g
    seed_volume = len(members)
    g, members, steps = expand(g, n, members, rng, cfg.candidate_policy, partition=k)
    trace.extend(steps)
    return ExtractionResult(
        members=members,
        volume=len(members),
        seed_volume=seed_volume,
        n=n,
        ghz_groups=tuple(materialize_ghz(members, g, n)),
        final_graph=g,
        trace=tuple(trace),
        host_partition=k,
        restart=restart,
        original_size=len(g0),
    )


def remote_extraction(g: BipartiteGraph, cfg: ExtractionConfig = ExtractionConfig()) -> ExtractionResult:
    """
    Extract remote GHZ states of mass ``cfg.n`` from ``g``.

    With several restarts or both host partitions the best run wins: largest
    volume, then fewest deleted vertices, then lowest restart index, then P1.
    Restart ``i`` draws from the substream ``SeedSequence(cfg.seed, spawn_key=(i,))``.
    """
    if not g.partition_mask(1) or not g.partition_mask(2):
        raise DegenerateGraph("both partitions must be nonempty")
    if not is_connected(g):
        raise DegenerateGraph("graph is not connected")
    best, best_key = None, None
    for restart in range(cfg.restarts):
        for k in _resolve_hosts(g, cfg.host_partition):
            rng = np.random.default_rng(np.random.SeedSequence(cfg.seed, spawn_key=(restart,)))
            res = _single_run(g, cfg, k, rng, restart)
            key = (-res.volume, res.deleted_count, restart, k)
            if best_key is None or key < best_key:
                best, best_key = res, key
    return best


def materialize_ghz(members, final_graph: BipartiteGraph, n: int) -> list[tuple[int, tuple[int, ...]]]:
    """Pair each member with the n-1 smallest-id vertices of its remote set."""
    members = sorted(members)
    if not members:
        return []
    if len({final_graph.partition_of(v) for v in members}) > 1:
        raise InvalidMembers("members span both partitions")
    _check_members(final_graph, members, n)
    groups = []
    for v in members:
        partners = final_graph.ids_of(final_graph.remote_mask(v))[: n - 1]
        groups.append((v, tuple(partners)))
    return groups


def verify_result(g_original: BipartiteGraph, result: ExtractionResult) -> Verdict:
    """Independent re-check of an extraction result against the original graph."""
    n = result.n
    members = set(result.members)
    if result.volume != len(members):
        return Verdict(False, f"volume ≠ |members| ({result.volume} vs {len(members)})")
    if result.volume < result.seed_volume:
        return Verdict(False, f"volume {result.volume} below seed volume {result.seed_volume}")

    g = g_original
    for i, step in enumerate(result.trace):
        unknown = [v for v in step.removed_vertices if v not in g]
        if unknown:
            return Verdict(False, f"trace step {i} deletes absent vertices {sorted(unknown)}")
        if step.removed_vertices & step.members_after:
            return Verdict(False, f"trace step {i} deletes its own members")
        g = delete_vertices(g, step.removed_vertices)
    if g != result.final_graph:
        return Verdict(False, "trace replay does not reproduce the final graph")
    if result.trace and set(result.trace[-1].members_after) != members:
        return Verdict(False, "last trace step disagrees with the reported members")

    fg = result.final_graph
    if not fg.star_mask(1) or not fg.star_mask(2):
        return Verdict(False, "final graph lacks a star vertex in some partition")
    missing = [v for v in members if v not in fg]
    if missing:
        return Verdict(False, f"members {sorted(missing)} are not in the final graph")
    if len({fg.partition_of(v) for v in members}) > 1:
        return Verdict(False, "members span both partitions")
    taken = 0
    for v in sorted(members):
        r = fg.remote_mask(v)
        if r.bit_count() < n - 1:
            return Verdict(False, f"condition I cardinality: member {v} has {r.bit_count()} remote vertices, needs {n - 1}")
        if r & taken:
            return Verdict(False, f"condition I disjointness: remote set of member {v} overlaps another member's")
        taken |= r

    if len(result.ghz_groups) != len(members):
        return Verdict(False, f"{len(result.ghz_groups)} GHZ groups for {len(members)} members")
    used = set()
    for member, partners in result.ghz_groups:
        if member not in members:
            return Verdict(False, f"GHZ group anchored at non-member {member}")
        group = [member, *partners]
        if len(group) != n or len(set(group)) != n:
            return Verdict(False, f"GHZ group of {member} has {len(set(group))} distinct vertices, expected {n}")
        if used & set(group):
            return Verdict(False, f"GHZ group of {member} reuses vertices {sorted(used & set(group))}")
        used |= set(group)
        if not set(partners) <= set(fg.ids_of(fg.remote_mask(member))):
            return Verdict(False, f"GHZ partners of {member} are not in its remote set")
        for i, a in enumerate(group):
            for b in group[i + 1:]:
                if g_original.has_edge(a, b):
                    return Verdict(False, f"GHZ group of {member} contains adjacent vertices {a}, {b}")
    return Verdict(True)
