import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from remote_extract import GeneralGraph, build_bipartite, is_connected
from remote_extract.errors import EdgeCountOutOfRange, NoBipartiteSubgraphFound, UnachievableDensity
from remote_extract.generators import (
    ModelKind,
    TopologyModel,
    bipartite_subgraph,
    edge_bounds,
    internet_like_topology,
    random_connected_bipartite,
)


def two_colourable(g):
    """Independent BFS two-colouring of the underlying simple graph."""
    colour = {}
    for s in g.vertices:
        if s in colour:
            continue
        colour[s], queue = 0, [s]
        while queue:
            u = queue.pop()
            for w in g.neighbors(u):
                if w not in colour:
                    colour[w] = 1 - colour[u]
                    queue.append(w)
                elif colour[w] == colour[u]:
                    return False
    return True


def test_bounds():
    assert edge_bounds(10, 40) == (49, 400)
    assert edge_bounds(25, 25) == (49, 625)


def test_spanning_tree_and_complete():
    g = random_connected_bipartite(25, 25, 49, np.random.default_rng(0))
    assert g.edge_count == 49 and is_connected(g)
    k = random_connected_bipartite(25, 25, 625, np.random.default_rng(0))
    assert k.edge_count == 625
    assert all(k.degree(v) == 25 for v in k.vertices)


def test_out_of_range():
    with pytest.raises(EdgeCountOutOfRange) as err:
        random_connected_bipartite(10, 40, 48, np.random.default_rng(0))
    assert (err.value.lo, err.value.hi) == (49, 400)
    assert "[49, 400]" in str(err.value)
    with pytest.raises(EdgeCountOutOfRange):
        random_connected_bipartite(10, 40, 401, np.random.default_rng(0))


def test_same_seed_same_graph():
    a = random_connected_bipartite(20, 30, 200, np.random.default_rng(5))
    b = random_connected_bipartite(20, 30, 200, np.random.default_rng(5))
    assert a == b


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 12), st.integers(1, 12), st.data())
def test_random_connected_bipartite_contract(a, b, data):
    lo, hi = edge_bounds(a, b)
    m = data.draw(st.integers(lo, hi))
    g = random_connected_bipartite(a, b, m, np.random.default_rng(data.draw(st.integers(0, 2**32))))
    assert g.edge_count == m
    assert len(g.p1) == a and len(g.p2) == b
    assert is_connected(g)


@pytest.mark.parametrize("kind", list(ModelKind))
@pytest.mark.parametrize("m", [49, 100, 180])
def test_internet_topologies_hit_target(kind, m):
    for seed in range(5):
        g = internet_like_topology(TopologyModel(kind), 50, m, np.random.default_rng(seed))
        assert len(g) == 50
        assert g.edge_count == m
        assert is_connected(g)


def test_duplication_divergence_mean_edges():
    model = TopologyModel(ModelKind.DUPLICATION_DIVERGENCE)
    for m in (60, 120):
        counts = [internet_like_topology(model, 50, m, np.random.default_rng(s)).edge_count for s in range(100)]
        assert abs(np.mean(counts) - m) <= 0.05 * m


def test_unachievable_density():
    with pytest.raises(UnachievableDensity):
        internet_like_topology(TopologyModel(ModelKind.PREFERENTIAL_ATTACHMENT), 50, 48, np.random.default_rng(0))
    with pytest.raises(UnachievableDensity):
        internet_like_topology(TopologyModel(ModelKind.RANDOM_BIPARTITE), 50, 700, np.random.default_rng(0))
    with pytest.raises(ValueError):
        TopologyModel(ModelKind.SMALL_WORLD_WEB, rewire_prob=1.5)


def test_subgraph_of_bipartite_graph_is_itself():
    b = random_connected_bipartite(6, 9, 30, np.random.default_rng(1))
    h = bipartite_subgraph(GeneralGraph(b.adjacency), len(b), np.random.default_rng(2))
    assert h == b


def test_subgraph_of_odd_cycle():
    c5 = GeneralGraph.from_edges(range(5), [(i, (i + 1) % 5) for i in range(5)])
    with pytest.raises(NoBipartiteSubgraphFound):
        bipartite_subgraph(c5, 5, np.random.default_rng(0))
    p4 = bipartite_subgraph(c5, 4, np.random.default_rng(0))
    assert p4.edge_count == 3 and is_connected(p4)
    assert sorted(p4.degree(v) for v in p4.vertices) == [1, 1, 2, 2]


@pytest.mark.parametrize("kind", list(ModelKind))
def test_subgraph_pipeline(kind):
    rng = np.random.default_rng(11)
    g = internet_like_topology(TopologyModel(kind), 50, 90, rng)
    h = bipartite_subgraph(g, 30, rng)
    assert len(h) == 30 and is_connected(h)
    assert two_colourable(GeneralGraph(h.adjacency))
    # induced: every edge of g between kept vertices survives
    for u, v in itertools.combinations(sorted(h.vertices), 2):
        assert (v in g.neighbors(u)) == h.has_edge(u, v) or h.partition_of(u) == h.partition_of(v)
        if h.partition_of(u) == h.partition_of(v):
            assert v not in g.neighbors(u)
    assert min(h.p1) == min(h.vertices)
    assert bipartite_subgraph(g, 30, np.random.default_rng(3)) == bipartite_subgraph(g, 30, np.random.default_rng(3))
