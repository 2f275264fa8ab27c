import itertools
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

from remote_extract import build_bipartite

DATA = Path(__file__).parent / "data"


def butterfly():
    return build_bipartite([1, 2, 4], [3, 5, 6], [(1, 3), (1, 5), (2, 3), (2, 6), (3, 4), (4, 5), (4, 6)])


def path5():
    return build_bipartite([1, 3, 5], [2, 4], [(1, 2), (2, 3), (3, 4), (4, 5)])


def two_fan():
    return build_bipartite([1, 2, 3], [4, 5, 6, 7],
                           [(1, 4), (1, 5), (1, 6), (1, 7), (2, 4), (3, 4), (2, 6), (3, 5)])


def complete(a, b):
    p1, p2 = list(range(a)), list(range(a, a + b))
    return build_bipartite(p1, p2, itertools.product(p1, p2))


def crown(k=5):
    p1, p2 = list(range(k)), list(range(k, 2 * k))
    return build_bipartite(p1, p2, [(u, v) for u in p1 for v in p2 if v - k != u])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# -- naive references (plain set algebra, no bitmasks) -------------------------------


def naive_remote(g, v):
    other = g.p2 if v in g.p1 else g.p1
    return set(other) - set(g.neighbors(v))


def naive_has_stars(g):
    return any(not naive_remote(g, v) for v in g.p1) and any(not naive_remote(g, v) for v in g.p2)


def naive_condition_I(g, family, n):
    if not naive_has_stars(g):
        return False
    rs = [naive_remote(g, v) for v in family]
    if any(len(r) < n - 1 for r in rs):
        return False
    return all(not (a & b) for a, b in itertools.combinations(rs, 2))


def naive_condition_II(g, family, n):
    if not naive_has_stars(g):
        return False
    rs = [naive_remote(g, v) for v in family]
    common = set.intersection(*rs)
    if not common:
        return False
    if any(a & b != common for a, b in itertools.combinations(rs, 2)):
        return False
    res = [r - common for r in rs]
    return all(len(r) >= n - 1 for r in res) and all(not (a & b) for a, b in itertools.combinations(res, 2))


@st.composite
def bipartite_graphs(draw, max_side=6, connected=False):
    a = draw(st.integers(1, max_side))
    b = draw(st.integers(1, max_side))
    p1, p2 = list(range(a)), list(range(a, a + b))
    slots = list(itertools.product(p1, p2))
    chosen = draw(st.lists(st.booleans(), min_size=len(slots), max_size=len(slots)))
    edges = [e for e, keep in zip(slots, chosen) if keep]
    if connected:
        # random spanning tree: every vertex hooks onto an earlier opposite-side vertex
        edges.append((p1[0], p2[0]))
        placed = {0: [p1[0]], 1: [p2[0]]}
        for v in p1[1:] + p2[1:]:
            side = 0 if v < a else 1
            u = draw(st.sampled_from(placed[1 - side]))
            edges.append((v, u) if side == 0 else (u, v))
            placed[side].append(v)
    return build_bipartite(p1, p2, edges)


# -- acceptance summary ----------------------------------------------------------------

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
