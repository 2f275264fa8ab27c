"""
Acceptance gate: one test per criterion, each recording a PASS/FAIL line that
is printed in pytest's terminal summary.

Slow by design (several minutes in total); every sample is seeded.
"""

import statistics
import subprocess
import sys
import time

import numpy as np
import pytest

from remote_extract import (
    ExtractionConfig,
    HostPartition,
    StarPolicy,
    check_condition_I,
    check_condition_II,
    ensure_star_vertices,
    expand,
    is_connected,
    remote_extraction,
    verify_result,
)
from remote_extract.errors import EdgeCountOutOfRange
from remote_extract.experiments import BipartiteSplit, InternetTopology, SweepConfig, run_sweep
from remote_extract.generators import ModelKind, TopologyModel, edge_bounds, random_connected_bipartite
from remote_extract.oracle import max_condition_I_family, max_condition_II_family, volume_upper_bound

from conftest import ACCEPTANCE_LINES, DATA, butterfly, complete, crown, path5

SPLITS = [(10, 40), (20, 30), (25, 25)]


def record(number, ok, detail):
    ACCEPTANCE_LINES.append(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
    print(ACCEPTANCE_LINES[-1])
    assert ok, detail


@pytest.fixture(scope="module")
def soundness_runs():
    """10,000 extraction runs shared by criteria 1 and 2."""
    rng = np.random.default_rng(20240601)
    runs = []
    for i in range(10_000):
        a, b = SPLITS[i % 3]
        lo, hi = edge_bounds(a, b)
        m = int(rng.integers(lo, hi + 1))
        n = (2, 3, 5)[int(rng.integers(3))]
        g = random_connected_bipartite(a, b, m, rng)
        res = remote_extraction(g, ExtractionConfig(n=n, seed=int(rng.integers(2**63))))
        runs.append((g, res))
    return runs


def test_criterion_01_soundness(soundness_runs):
    bad = []
    for g, res in soundness_runs:
        verdict = verify_result(g, res)
        if not verdict:
            bad.append(verdict.reason)
    record(1, not bad, f"{len(soundness_runs)} runs, {len(bad)} failed verification"
                       + (f" (first: {bad[0]})" if bad else ""))


def test_criterion_02_monotonicity(soundness_runs):
    violations = sum(res.volume < res.seed_volume for _, res in soundness_runs)
    gains = sum(res.volume > res.seed_volume for _, res in soundness_runs)
    record(2, violations == 0, f"{violations} runs with r_g < seed volume; {gains} runs strictly improved")


def test_criterion_03_fixtures():
    seeds = range(25)
    got = {
        "path-5": {remote_extraction(path5(), ExtractionConfig(n=2, seed=s)).volume for s in seeds},
        "butterfly": {remote_extraction(butterfly(), ExtractionConfig(n=2, seed=s)).volume for s in seeds},
        "crown": {remote_extraction(crown(5), ExtractionConfig(n=2, seed=s)).volume for s in seeds},
        "complete": {remote_extraction(complete(a, b), ExtractionConfig(n=n, seed=s)).volume
                     for a, b in ((1, 1), (3, 3), (4, 7)) for n in (2, 3, 5, 9) for s in range(3)},
    }
    want = {"path-5": {1}, "butterfly": {2}, "crown": {3}, "complete": {0}}
    record(3, got == want, f"volumes {got}")


def test_criterion_04_oracle_consistency():
    rng = np.random.default_rng(4)
    problems, instances, seeded_gain = [], 0, 0
    while instances < 1000:
        a = int(rng.integers(1, 8))
        b = int(rng.integers(1, 15 - a))
        lo, hi = edge_bounds(a, b)
        g = random_connected_bipartite(a, b, int(rng.integers(lo, hi + 1)), rng)
        n = int(rng.integers(2, 4))
        instances += 1
        res = remote_extraction(g, ExtractionConfig(n=n, seed=instances, host_partition=HostPartition.BOTH))
        if res.volume > volume_upper_bound(len(g), n):
            problems.append(f"volume {res.volume} above bound on instance {instances}")
        g1, _ = ensure_star_vertices(g, StarPolicy.RANDOM, np.random.default_rng(instances))
        for k in (1, 2):
            one = max_condition_I_family(g1, n, k)
            two = max_condition_II_family(g1, n, k)
            if one.best_size and not check_condition_I(g1, one.best_family, n):
                problems.append(f"condition I oracle family fails re-check on instance {instances}")
            if two.best_size and not check_condition_II(g1, two.best_family, n):
                problems.append(f"condition II oracle family fails re-check on instance {instances}")
            g2, members, _ = expand(g1, n, one.best_family, partition=k)
            if len(members) < one.best_size or not check_condition_I(g2, members, n):
                problems.append(f"seeded expansion lost volume on instance {instances}")
            seeded_gain += len(members) - one.best_size
    record(4, not problems, f"{instances} instances (<= 14 vertices), {len(problems)} problems, "
                            f"expansion added {seeded_gain} members beyond oracle seeds"
                            + (f" (first: {problems[0]})" if problems else ""))


BANDS = {(25, 25): (10, 13), (20, 30): (9, 12), (10, 40): (6, 9)}


def test_criterion_05_bands():
    lines, ok = [], True
    for (a, b), (lo_band, hi_band) in BANDS.items():
        lo, hi = edge_bounds(a, b)
        cfg = SweepConfig(BipartiteSplit(a, b), (2,), (lo, hi, (hi - lo) // 24), 200, base_seed=5,
                          extraction=ExtractionConfig(restarts=4))
        best = run_sweep(cfg).best_point(2)
        inside = lo_band <= best.r_g.mean <= hi_band
        ok &= inside
        lines.append(f"({a},{b}) best mean r_g(2)={best.r_g.mean:.2f} at m={best.m} band [{lo_band},{hi_band}]")
    record(5, ok, "; ".join(lines))


def test_criterion_06_gability():
    n_values = tuple(range(3, 19))
    cfg = SweepConfig(BipartiteSplit(25, 25), n_values, (49, 625, 24), 50, base_seed=6,
                      extraction=ExtractionConfig(restarts=4))
    rep = run_sweep(cfg)
    best3 = rep.best_point(3)
    reached = max(r.n for r in rep.records if r.ok and r.r_g >= 1)
    mean_reach = max((p.n for p in rep.points if p.r_g.mean >= 1), default=0)
    ok = best3.r_g.mean > 6 and reached >= 14
    record(6, ok, f"best mean r_g(3)={best3.r_g.mean:.2f} at m={best3.m}; largest n extracted in some trial={reached} "
                  f"(largest n with mean >= 1: {mean_reach})")


INTERNET_RANGES = {
    ModelKind.RANDOM_BIPARTITE: (49, 409, 40),
    ModelKind.PREFERENTIAL_ATTACHMENT: (49, 124, 15),
    ModelKind.SMALL_WORLD_WEB: (49, 139, 10),
    ModelKind.DUPLICATION_DIVERGENCE: (49, 157, 12),
}


def test_criterion_07_internet_trend():
    lines, ok = [], True
    for kind, m_range in INTERNET_RANGES.items():
        cfg = SweepConfig(InternetTopology(TopologyModel(kind)), (2,), m_range, 100, base_seed=7,
                          extraction=ExtractionConfig(restarts=4, star_policy=StarPolicy.MIN_REMOTE_SET))
        rep = run_sweep(cfg)
        rho = rep.trend(2)
        ok &= rho >= 0.8
        lines.append(f"{kind.value} rho={rho:.3f} (failed trials {rep.failure_rate:.1%})")
    record(7, ok, "; ".join(lines))


def _median_runtime(size, density, count, seed):
    rng = np.random.default_rng(seed)
    lo, hi = edge_bounds(size, size)
    m = max(lo, round(density * hi))
    times = []
    for i in range(count):
        g = random_connected_bipartite(size, size, m, rng)
        t0 = time.perf_counter()
        remote_extraction(g, ExtractionConfig(n=2, seed=i))
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def test_criterion_08_scaling():
    small = _median_runtime(25, 0.5, 40, 81)
    large = _median_runtime(50, 0.5, 40, 82)
    ratio = large / small
    ok = ratio <= 24 and large < 1.0
    record(8, ok, f"median runtime (25,25) {small * 1e3:.2f} ms, (50,50) {large * 1e3:.2f} ms, growth x{ratio:.1f}")


def _cli(*args):
    proc = subprocess.run([sys.executable, "-m", "remote_extract", *map(str, args)], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    return proc.stdout


def test_criterion_09_determinism(tmp_path):
    outputs = []
    for run, jobs in ((0, 1), (1, 2)):
        d = tmp_path / f"run{run}"
        d.mkdir()
        _cli("generate", "--p1", 20, "--p2", 30, "--m", 250, "--seed", 9, "--out", d / "g.json")
        _cli("extract", d / "g.json", "--n", 3, "--seed", 11, "--restarts", 3, "--out", d / "r.json")
        _cli("extract", DATA / "path5.txt", "--seed", 2, "--out", d / "p.json")
        _cli("sweep", "--scenario", "bipartite:20,30", "--n", 2, 3, "--m-range", "49:600:110", "--trials", 8,
             "--seed", 13, "--jobs", jobs, "--out-dir", d)
        _cli("compare", "--scenario", "internet:ppi", "--m-range", "60:100:20", "--trials", 4,
             "--seed", 17, "--jobs", jobs, "--out-dir", d)
        outputs.append({p.name: p.read_bytes() for p in sorted(d.iterdir())})
    same = outputs[0] == outputs[1]
    record(9, same, f"{len(outputs[0])} files compared across serial and 2-worker runs, "
                    f"{'all byte-identical' if same else 'differences found'}")


def test_criterion_10_generator_validity():
    rng = np.random.default_rng(10)
    bad = 0
    for i in range(1000):
        a, b = SPLITS[i % 3]
        lo, hi = edge_bounds(a, b)
        m = int(rng.integers(lo, hi + 1))
        g = random_connected_bipartite(a, b, m, rng)
        crosses = all((u in g.p1) != (v in g.p1) for u, v in g.edges())
        if not (crosses and is_connected(g) and g.edge_count == m and len(g.p1) == a and len(g.p2) == b):
            bad += 1
    rejected = []
    for a, b in SPLITS:
        lo, hi = edge_bounds(a, b)
        for m in (lo - 1, hi + 1):
            try:
                random_connected_bipartite(a, b, m, rng)
            except EdgeCountOutOfRange as exc:
                rejected.append((exc.lo, exc.hi) == (lo, hi) and f"[{lo}, {hi}]" in str(exc))
    ok = bad == 0 and len(rejected) == 6 and all(rejected)
    record(10, ok, f"1000 graphs, {bad} invalid; {sum(rejected)}/6 out-of-range requests rejected with correct bounds")
