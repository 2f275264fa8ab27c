"""
Monte-Carlo sweeps over edge counts and GHZ masses.

Every trial derives its own seed from (base seed, scenario tag, m, n, trial
index), so a sweep gives the same records whatever the execution order or
worker count. Failed trials are kept in the record list with a status and
left out of the statistics.
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from typing import NamedTuple, Union

import numpy as np
from scipy import stats

from .errors import EmptySample, ExtractionError
from .extraction import ExtractionConfig, remote_extraction
from .generators import (
    TopologyModel,
    bipartite_subgraph,
    edge_bounds,
    internet_like_topology,
    random_connected_bipartite,
)

__all__ = [
    "BipartiteSplit",
    "InternetTopology",
    "SweepConfig",
    "TrialRecord",
    "PointStats",
    "SweepReport",
    "Aggregate",
    "aggregate",
    "trial_seed",
    "run_trial",
    "run_sweep",
    "compare_seed_vs_final",
    "TRIAL_COLUMNS",
    "AGGREGATE_COLUMNS",
    "COMPARE_COLUMNS",
]

TRIAL_COLUMNS = ["scenario", "model", "p1", "p2", "m", "n", "trial", "seed",
                 "r_tilde", "r_g", "deleted_count", "runtime_ms", "status"]
AGGREGATE_COLUMNS = ["scenario", "m", "n", "trials", "mean_r", "ci95_lo", "ci95_hi",
                     "min_r", "max_r", "mean_r_tilde"]
COMPARE_COLUMNS = ["scenario", "m", "n", "trials", "mean_r", "ci95_lo", "ci95_hi",
                   "mean_r_tilde", "ci95_lo_tilde", "ci95_hi_tilde", "min_r_tilde", "max_r_tilde"]


@dataclass(frozen=True)
class BipartiteSplit:
    p1: int
    p2: int

    @property
    def tag(self) -> str:
        return f"bipartite:{self.p1},{self.p2}"


@dataclass(frozen=True)
class InternetTopology:
    model: TopologyModel
    nodes: int = 50
    subgraph_size: int = 30
    attempts: int = 64

    @property
    def tag(self) -> str:
        return f"internet:{self.model.kind.value}"


Scenario = Union[BipartiteSplit, InternetTopology]


@dataclass(frozen=True)
class SweepConfig:
    scenario: Scenario
    n_values: tuple = (2,)
    m_range: tuple = (49, 625, 48)  # inclusive lo, inclusive hi, step
    trials_per_point: int = 100
    base_seed: int = 0
    extraction: ExtractionConfig = field(default_factory=ExtractionConfig)
    jobs: int = 1
    record_timing: bool = False

    def __post_init__(self):
        lo, hi, step = self.m_range
        if step < 1 or lo > hi:
            raise ValueError(f"bad m range {self.m_range}")
        if self.trials_per_point < 1:
            raise ValueError("trials_per_point must be >= 1")
        if not self.n_values or min(self.n_values) < 2:
            raise ValueError("n_values must be nonempty and >= 2")
        if isinstance(self.scenario, BipartiteSplit):
            b_lo, b_hi = edge_bounds(self.scenario.p1, self.scenario.p2)
            if lo < b_lo or hi > b_hi:
                raise ValueError(f"m range {lo}..{hi} leaves the connected range [{b_lo}, {b_hi}]")

    def m_values(self) -> list[int]:
        lo, hi, step = self.m_range
        return list(range(lo, hi + 1, step))


@dataclass(frozen=True)
class TrialRecord:
    scenario: str
    model: str
    p1: int | None
    p2: int | None
    m: int
    n: int
    trial: int
    seed: int
    r_tilde: int | None
    r_g: int | None
    deleted_count: int | None
    runtime_ms: float | None
    status: str

    @property
    def ok(self) -> bool:
        return self.status == "ok"


class Aggregate(NamedTuple):
    mean: float
    ci95_low: float
    ci95_high: float
    min: float
    max: float


def aggregate(values) -> Aggregate:
    """Mean, two-sided 95% Student-t interval, min and max."""
    x = np.asarray(list(values), dtype=float)
    if x.size == 0:
        raise EmptySample("cannot aggregate an empty sample")
    mean = float(x.mean())
    if x.size == 1:
        half = 0.0
    else:
        half = float(stats.t.ppf(0.975, x.size - 1) * x.std(ddof=1) / math.sqrt(x.size))
    return Aggregate(mean, mean - half, mean + half, float(x.min()), float(x.max()))


@dataclass(frozen=True)
class PointStats:
    m: int
    n: int
    trials: int
    failures: int
    r_g: Aggregate | None
    r_tilde: Aggregate | None


@dataclass
class SweepReport:
    config: SweepConfig
    points: list[PointStats]
    records: list[TrialRecord]

    def point(self, m: int, n: int) -> PointStats:
        for p in self.points:
            if p.m == m and p.n == n:
                return p
        raise KeyError((m, n))

    @property
    def failure_rate(self) -> float:
        return sum(not r.ok for r in self.records) / len(self.records)

    def best_point(self, n: int) -> PointStats:
        """Point with the highest mean r_g at mass n (earliest m on ties)."""
        pts = [p for p in self.points if p.n == n and p.r_g is not None]
        return max(pts, key=lambda p: (p.r_g.mean, -p.m))

    def trend(self, n: int = 2) -> float:
        """Spearman rank correlation between m and mean r_g at mass n."""
        pts = [p for p in self.points if p.n == n and p.r_g is not None]
        return float(stats.spearmanr([p.m for p in pts], [p.r_g.mean for p in pts]).statistic)

    # -- output ----------------------------------------------------------------

    def trial_rows(self):
        for r in self.records:
            row = asdict(r)
            row["runtime_ms"] = "" if r.runtime_ms is None else f"{r.runtime_ms:.3f}"
            yield [_cell(row[c]) for c in TRIAL_COLUMNS]

    def aggregate_rows(self):
        tag = self.config.scenario.tag
        for p in self.points:
            if p.r_g is None:
                yield [tag, p.m, p.n, 0, "", "", "", "", "", ""]
                continue
            yield [tag, p.m, p.n, p.trials, _num(p.r_g.mean), _num(p.r_g.ci95_low),
                   _num(p.r_g.ci95_high), _num(p.r_g.min), _num(p.r_g.max), _num(p.r_tilde.mean)]

    def compare_rows(self):
        tag = self.config.scenario.tag
        for p in self.points:
            if p.r_g is None:
                yield [tag, p.m, p.n, 0] + [""] * 8
                continue
            g, t = p.r_g, p.r_tilde
            yield [tag, p.m, p.n, p.trials, _num(g.mean), _num(g.ci95_low), _num(g.ci95_high),
                   _num(t.mean), _num(t.ci95_low), _num(t.ci95_high), _num(t.min), _num(t.max)]

    def write_trials_csv(self, path):
        _write_csv(path, TRIAL_COLUMNS, self.trial_rows())

    def write_aggregate_csv(self, path):
        _write_csv(path, AGGREGATE_COLUMNS, self.aggregate_rows())

    def write_compare_csv(self, path):
        _write_csv(path, COMPARE_COLUMNS, self.compare_rows())

    def write_summary(self, path):
        rows = []
        for p in self.points:
            row = {"m": p.m, "n": p.n, "trials": p.trials, "failures": p.failures}
            if p.r_g is not None:
                row.update(mean_r=round(p.r_g.mean, 6), ci95_lo=round(p.r_g.ci95_low, 6),
                           ci95_hi=round(p.r_g.ci95_high, 6), min_r=p.r_g.min, max_r=p.r_g.max,
                           mean_r_tilde=round(p.r_tilde.mean, 6))
            rows.append(row)
        doc = {
            "scenario": self.config.scenario.tag,
            "base_seed": self.config.base_seed,
            "trials_per_point": self.config.trials_per_point,
            "failed_trials": sum(not r.ok for r in self.records),
            "total_trials": len(self.records),
            "points": rows,
        }
        with open(path, "w") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
            fh.write("\n")


def _num(x: float) -> str:
    return f"{x:.6f}"


def _cell(x):
    return "" if x is None else x


def _write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


# -- running -------------------------------------------------------------------------


def trial_seed(base_seed: int, tag: str, m: int, n: int, trial: int) -> int:
    """64-bit seed that depends only on the trial's coordinates."""
    key = f"{base_seed}|{tag}|{m}|{n}|{trial}".encode()
    return int.from_bytes(hashlib.blake2b(key, digest_size=8).digest(), "little")


def run_trial(scenario: Scenario, m: int, n: int, trial: int, base_seed: int,
              extraction: ExtractionConfig = ExtractionConfig(), record_timing: bool = False) -> TrialRecord:
    seed = trial_seed(base_seed, scenario.tag, m, n, trial)
    rng = np.random.default_rng(seed)
    if isinstance(scenario, BipartiteSplit):
        model, p1, p2 = "bipartite", scenario.p1, scenario.p2
    else:
        model, p1, p2 = scenario.model.kind.value, None, None
    base = dict(scenario=scenario.tag, model=model, m=m, n=n, trial=trial, seed=seed)
    try:
        if isinstance(scenario, BipartiteSplit):
            g = random_connected_bipartite(p1, p2, m, rng)
        else:
            general = internet_like_topology(scenario.model, scenario.nodes, m, rng)
            g = bipartite_subgraph(general, scenario.subgraph_size, rng, scenario.attempts)
            p1, p2 = len(g.p1), len(g.p2)
        t0 = time.perf_counter()
        res = remote_extraction(g, replace(extraction, n=n, seed=seed))
        elapsed = (time.perf_counter() - t0) * 1e3
    except ExtractionError as exc:
        return TrialRecord(p1=p1, p2=p2, r_tilde=None, r_g=None, deleted_count=None,
                           runtime_ms=None, status=f"failed:{type(exc).__name__}", **base)
    return TrialRecord(p1=p1, p2=p2, r_tilde=res.seed_volume, r_g=res.volume,
                       deleted_count=res.deleted_count,
                       runtime_ms=elapsed if record_timing else None, status="ok", **base)


def _run_task(args):
    return run_trial(*args)


def run_sweep(cfg: SweepConfig) -> SweepReport:
    tasks = [(cfg.scenario, m, n, t, cfg.base_seed, cfg.extraction, cfg.record_timing)
             for m in cfg.m_values() for n in cfg.n_values for t in range(cfg.trials_per_point)]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            records = list(pool.map(_run_task, tasks, chunksize=16))
    else:
        records = [_run_task(t) for t in tasks]

    points = []
    for m in cfg.m_values():
        for n in cfg.n_values:
            group = [r for r in records if r.m == m and r.n == n]
            good = [r for r in group if r.ok]
            points.append(PointStats(
                m=m, n=n, trials=len(good), failures=len(group) - len(good),
                r_g=aggregate(r.r_g for r in good) if good else None,
                r_tilde=aggregate(r.r_tilde for r in good) if good else None,
            ))
    return SweepReport(cfg, points, records)


def compare_seed_vs_final(cfg: SweepConfig) -> SweepReport:
    """
    Same sweep as :func:`run_sweep`; the report's ``compare_rows`` pair the
    seed-volume and final-volume statistics per point, including the seed
    volume's min-max band.
    """
    return run_sweep(cfg)
