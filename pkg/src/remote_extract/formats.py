"""
Reading and writing graphs and extraction results.

Graphs are stored either as a JSON document ``{"p1": [...], "p2": [...],
"edges": [[u, v], ...]}`` or as a small edge-list text file::

    # comment
    P1: 1 2 3
    P2: 4 5 6
    1 4
    2 5

Writers sort everything so repeated runs produce byte-identical files.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import GraphError, ParseError
from .extraction import ExtractionResult, StepKind, TraceStep
from .graph_core import BipartiteGraph, build_bipartite

__all__ = [
    "graph_to_dict",
    "graph_from_dict",
    "dump_graph",
    "parse_edge_list",
    "parse_graph_text",
    "load_graph",
    "save_graph",
    "result_to_dict",
    "result_from_dict",
    "dump_result",
    "load_result",
    "save_result",
]


def graph_to_dict(g: BipartiteGraph) -> dict:
    return {"p1": sorted(g.p1), "p2": sorted(g.p2), "edges": [list(e) for e in g.edges()]}


def graph_from_dict(doc) -> BipartiteGraph:
    if not isinstance(doc, dict):
        raise ParseError("graph document must be an object")
    missing = {"p1", "p2", "edges"} - doc.keys()
    if missing:
        raise ParseError(f"graph document lacks field(s) {sorted(missing)}")
    for e in doc["edges"]:
        if not isinstance(e, (list, tuple)) or len(e) != 2:
            raise ParseError(f"edge {e!r} is not a pair")
    return build_bipartite(doc["p1"], doc["p2"], [tuple(e) for e in doc["edges"]])


def dump_graph(g: BipartiteGraph) -> str:
    return json.dumps(graph_to_dict(g), sort_keys=True) + "\n"


def _ints(tokens, lineno):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"line {lineno}: expected integer ids, got {' '.join(tokens)!r}") from None


def parse_edge_list(text: str) -> BipartiteGraph:
    parts, edges = {}, []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, rest = line.partition(":")
        if sep:
            key = head.strip().upper()
            if key not in ("P1", "P2"):
                raise ParseError(f"line {lineno}: unknown header {head.strip()!r}")
            if key in parts:
                raise ParseError(f"line {lineno}: {key} given twice")
            if edges:
                raise ParseError(f"line {lineno}: partition headers must precede edges")
            parts[key] = _ints(rest.split(), lineno)
            continue
        if len(parts) < 2:
            raise ParseError(f"line {lineno}: edge before both P1 and P2 headers")
        pair = _ints(line.split(), lineno)
        if len(pair) != 2:
            raise ParseError(f"line {lineno}: expected 'u v', got {line!r}")
        edges.append(tuple(pair))
    if len(parts) < 2:
        raise ParseError("edge list needs both 'P1:' and 'P2:' lines")
    return build_bipartite(parts["P1"], parts["P2"], edges)


def parse_graph_text(text: str) -> BipartiteGraph:
    """Parse either format; JSON is recognised by a leading brace."""
    if text.lstrip().startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
        return graph_from_dict(doc)
    return parse_edge_list(text)


def load_graph(path) -> BipartiteGraph:
    return parse_graph_text(Path(path).read_text())


def save_graph(g: BipartiteGraph, path) -> None:
    Path(path).write_text(dump_graph(g))


# -- results --------------------------------------------------------------------------


def result_to_dict(res: ExtractionResult) -> dict:
    return {
        "n": res.n,
        "volume": res.volume,
        "seed_volume": res.seed_volume,
        "members": sorted(res.members),
        "ghz_groups": [[v, list(p)] for v, p in res.ghz_groups],
        "host_partition": res.host_partition,
        "restart": res.restart,
        "original_size": res.original_size,
        "deleted_count": res.deleted_count,
        "trace": [
            {
                "kind": s.kind.value,
                "focus": s.focus,
                "removed": sorted(s.removed_vertices),
                "members_after": sorted(s.members_after),
            }
            for s in res.trace
        ],
        "final_graph": graph_to_dict(res.final_graph),
    }


def result_from_dict(doc) -> ExtractionResult:
    try:
        trace = tuple(
            TraceStep(StepKind(s["kind"]), s["focus"], frozenset(s["removed"]), frozenset(s["members_after"]))
            for s in doc["trace"]
        )
        return ExtractionResult(
            members=frozenset(doc["members"]),
            volume=int(doc["volume"]),
            seed_volume=int(doc["seed_volume"]),
            n=int(doc["n"]),
            ghz_groups=tuple((int(v), tuple(p)) for v, p in doc["ghz_groups"]),
            final_graph=graph_from_dict(doc["final_graph"]),
            trace=trace,
            host_partition=int(doc.get("host_partition", 1)),
            restart=int(doc.get("restart", 0)),
            original_size=int(doc.get("original_size", 0)),
        )
    except GraphError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed result document: {exc!r}") from None


def dump_result(res: ExtractionResult) -> str:
    return json.dumps(result_to_dict(res), sort_keys=True, indent=1) + "\n"


def load_result(path) -> ExtractionResult:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    return result_from_dict(doc)


def save_result(res: ExtractionResult, path) -> None:
    Path(path).write_text(dump_result(res))
