"""
Command-line front end: ``remote-extract <command> ...``.

Exit codes: 0 success, 2 parse or configuration error, 3 degenerate graph,
4 instance too large for the oracle, 5 edge count outside the connected
bipartite range, 6 verification failure.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

import numpy as np

from . import formats
from .conditions import StarPolicy
from .errors import (
    DegenerateGraph,
    EdgeCountOutOfRange,
    InstanceTooLarge,
)
from .experiments import BipartiteSplit, InternetTopology, SweepConfig, run_sweep
from .extraction import CandidatePolicy, ExtractionConfig, HostPartition, remote_extraction, verify_result
from .generators import (
    ModelKind,
    TopologyModel,
    bipartite_subgraph,
    edge_bounds,
    internet_like_topology,
    random_connected_bipartite,
)
from .oracle import max_condition_I_family, max_condition_II_family

OUT_DIR_ENV = "REMOTE_EXTRACT_OUT_DIR"

EXIT_OK, EXIT_CONFIG, EXIT_DEGENERATE, EXIT_TOO_LARGE, EXIT_EDGE_RANGE, EXIT_VERIFY = 0, 2, 3, 4, 5, 6

log = logging.getLogger("remote_extract")


class UsageError(Exception):
    pass


def _default_out_dir() -> Path:
    return Path(os.environ.get(OUT_DIR_ENV, "."))


def _resolve_seed(seed):
    if seed is not None:
        return seed
    seed = int(np.random.SeedSequence().entropy % 2**63)
    print(f"seed={seed}", file=sys.stderr)
    log.info("no --seed given, using %d", seed)
    return seed


def _at_least(low):
    def parse(text):
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
        if value < low:
            raise argparse.ArgumentTypeError(f"must be >= {low}, got {value}")
        return value
    parse.__name__ = f"integer >= {low}"
    return parse


def _partition(text: str) -> int:
    key = text.lower().lstrip("p")
    if key not in ("1", "2"):
        raise argparse.ArgumentTypeError(f"partition must be p1 or p2, got {text!r}")
    return int(key)


def _m_range(text: str) -> tuple[int, int, int]:
    parts = text.split(":")
    try:
        vals = [int(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"m range must be lo:hi[:step], got {text!r}") from None
    if len(vals) == 2:
        vals.append(1)
    if len(vals) != 3:
        raise argparse.ArgumentTypeError(f"m range must be lo:hi[:step], got {text!r}")
    return tuple(vals)


def parse_scenario(text: str):
    kind, _, arg = text.partition(":")
    if kind == "bipartite":
        try:
            p1, p2 = (int(x) for x in arg.split(","))
        except ValueError:
            raise UsageError(f"bipartite scenario must look like bipartite:25,25, got {text!r}") from None
        return BipartiteSplit(p1, p2)
    if kind == "internet":
        try:
            return InternetTopology(TopologyModel(ModelKind(arg)))
        except ValueError:
            choices = ", ".join(k.value for k in ModelKind)
            raise UsageError(f"unknown topology model {arg!r} (choose from {choices})") from None
    raise UsageError(f"unknown scenario {text!r}")


# -- commands --------------------------------------------------------------------------


def cmd_extract(args) -> int:
    g = formats.load_graph(args.input)
    cfg = ExtractionConfig(
        n=args.n,
        seed=_resolve_seed(args.seed),
        restarts=args.restarts,
        host_partition=HostPartition(args.partition),
        star_policy=StarPolicy(args.star_policy),
        candidate_policy=CandidatePolicy(args.policy),
    )
    res = remote_extraction(g, cfg)
    out = Path(args.out) if args.out else _default_out_dir() / f"{Path(args.input).stem}.result.json"
    formats.save_result(res, out)
    print(f"r_g({cfg.n})={res.volume}")
    print(f"seed_volume={res.seed_volume}")
    return EXIT_OK


def _family_text(label, res):
    if res.best_size >= 2:
        fam = ",".join(str(v) for v in sorted(res.best_family))
        return f"{label}: {res.best_size} {{{fam}}}"
    return f"{label}: {res.best_size}"


def cmd_oracle(args) -> int:
    g = formats.load_graph(args.input)
    one = max_condition_I_family(g, args.n, args.partition, args.cap)
    two = max_condition_II_family(g, args.n, args.partition, args.cap)
    print(f"{_family_text('I', one)}; {_family_text('II', two)}")
    return EXIT_OK


def cmd_generate(args) -> int:
    rng = np.random.default_rng(_resolve_seed(args.seed))
    if args.model == "bipartite":
        if args.p1 is None or args.p2 is None:
            raise UsageError("--model bipartite needs --p1 and --p2")
        lo, hi = edge_bounds(args.p1, args.p2)
        if not lo <= args.m <= hi:
            raise EdgeCountOutOfRange(args.m, lo, hi)
        g = random_connected_bipartite(args.p1, args.p2, args.m, rng)
    else:
        general = internet_like_topology(TopologyModel(ModelKind(args.model)), args.nodes, args.m, rng)
        g = bipartite_subgraph(general, args.subgraph, rng)
    out = Path(args.out) if args.out else _default_out_dir() / f"{args.model}-{args.m}.json"
    formats.save_graph(g, out)
    print(f"wrote {out} ({len(g.p1)}+{len(g.p2)} vertices, {g.edge_count} edges)")
    return EXIT_OK


def _sweep(args, compare: bool) -> int:
    scenario = parse_scenario(args.scenario)
    m_range = args.m_range
    if m_range is None:
        if not isinstance(scenario, BipartiteSplit):
            raise UsageError("--m-range is required for internet scenarios")
        lo, hi = edge_bounds(scenario.p1, scenario.p2)
        m_range = (lo, hi, max(1, (hi - lo) // 12))
    try:
        cfg = SweepConfig(
            scenario=scenario,
            n_values=tuple(args.n),
            m_range=m_range,
            trials_per_point=args.trials,
            base_seed=_resolve_seed(args.seed),
            extraction=ExtractionConfig(
                restarts=args.restarts,
                host_partition=HostPartition(args.partition),
                star_policy=StarPolicy(args.star_policy),
            ),
            jobs=args.jobs,
            record_timing=args.timing,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = run_sweep(cfg)
    out_dir = Path(args.out_dir) if args.out_dir else _default_out_dir()
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = scenario.tag.replace(":", "-").replace(",", "x")
    report.write_trials_csv(out_dir / f"{stem}-trials.csv")
    report.write_aggregate_csv(out_dir / f"{stem}-aggregate.csv")
    report.write_summary(out_dir / f"{stem}-summary.json")
    if compare:
        report.write_compare_csv(out_dir / f"{stem}-compare.csv")
    failed = sum(not r.ok for r in report.records)
    print(f"{len(report.records)} trials, {failed} failed; outputs in {out_dir}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    return _sweep(args, compare=False)


def cmd_compare(args) -> int:
    return _sweep(args, compare=True)


def cmd_verify(args) -> int:
    g = formats.load_graph(args.graph)
    res = formats.load_result(args.result)
    verdict = verify_result(g, res)
    if verdict:
        print("ok")
        return EXIT_OK
    print(f"verification failed: {verdict.reason}", file=sys.stderr)
    return EXIT_VERIFY


# -- parser ---------------------------------------------------------------------------


def _extraction_flags(p, single_n=True):
    if single_n:
        p.add_argument("--n", type=_at_least(2), default=2, help="GHZ mass (2 means EPR pairs)")
    else:
        p.add_argument("--n", type=_at_least(2), nargs="+", default=[2], help="one or more GHZ masses")
    p.add_argument("--seed", type=_at_least(0), help="random seed (printed when omitted)")
    p.add_argument("--restarts", type=_at_least(1), default=1)
    p.add_argument("--partition", choices=[h.value for h in HostPartition], default="auto")
    p.add_argument("--star-policy", choices=[s.value for s in StarPolicy], default="random")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="remote-extract", description=__doc__.split("\n\n")[0].strip())
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="run the extraction on a graph file")
    p.add_argument("input")
    _extraction_flags(p)
    p.add_argument("--policy", choices=[c.value for c in CandidatePolicy], default="fewest-deletions",
                   help="candidate choice during expansion")
    p.add_argument("--out", help=f"result file (default: $${OUT_DIR_ENV}/<input>.result.json)")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("oracle", help="exact condition-family maxima on a small graph")
    p.add_argument("input")
    p.add_argument("--n", type=_at_least(2), default=2)
    p.add_argument("--partition", type=_partition, default=1, help="p1 or p2")
    p.add_argument("--cap", type=_at_least(0), default=20, help="largest non-star pool to enumerate")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("generate", help="write a random graph file")
    p.add_argument("--model", choices=[k.value for k in ModelKind], default="bipartite")
    p.add_argument("--p1", type=_at_least(1))
    p.add_argument("--p2", type=_at_least(1))
    p.add_argument("--nodes", type=_at_least(2), default=50)
    p.add_argument("--subgraph", type=_at_least(1), default=30, help="bipartite subgraph size for non-bipartite models")
    p.add_argument("--m", type=int, required=True, help="edge count")
    p.add_argument("--seed", type=_at_least(0))
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)

    for name, func, text in (("sweep", cmd_sweep, "Monte-Carlo sweep over edge counts"),
                             ("compare", cmd_compare, "sweep with paired seed/final statistics")):
        p = sub.add_parser(name, help=text)
        p.add_argument("--scenario", required=True, help="bipartite:P1,P2 or internet:as|www|ppi|bipartite")
        _extraction_flags(p, single_n=False)
        p.add_argument("--m-range", type=_m_range, help="lo:hi:step (inclusive)")
        p.add_argument("--trials", type=_at_least(1), default=100)
        p.add_argument("--jobs", type=_at_least(1), default=1)
        p.add_argument("--timing", action="store_true", help="fill the runtime_ms column")
        p.add_argument("--out-dir")
        p.set_defaults(func=func)

    p = sub.add_parser("verify", help="re-check a result file against its graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--result", required=True)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_CONFIG
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except EdgeCountOutOfRange as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EDGE_RANGE
    except InstanceTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except DegenerateGraph as exc:
        print(f"error: degenerate graph: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
