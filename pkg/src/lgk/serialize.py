"""JSON and DOT encodings.

All dumps are deterministic (sorted keys, fixed indentation, trailing
newline), so canonical forms of isomorphic systems serialize to identical
bytes.  Symbols appear by display name in files; indices stay internal.

Spec payloads carry a `kind` discriminator: `sft`, `sofic`, `dyck`,
`markov_dyck`, `full`, `expanded`.  System payloads mirror the dataclass:
levels with tags, per-layer labeled edges, and the collapse arrays.
"""

from __future__ import annotations

import json
from typing import Any

from .alphabet import Alphabet, Word
from .labeled_graph import LabeledGraph, from_names
from .subshift import (
    DyckN,
    Expanded,
    FullShift,
    MarkovDyck,
    SftForbidden,
    SoficGraph,
    SubshiftSpec,
)
from .system import LambdaGraphSystem, VertexLevel
from .invariants import InvariantReport
from .verdict import Verdict


def dumps(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


# -- subshift specs ------------------------------------------------------


def spec_to_payload(spec: SubshiftSpec) -> dict:
    if isinstance(spec, SftForbidden):
        return {
            "kind": "sft",
            "alphabet": list(spec.alphabet.names),
            "forbidden": sorted(spec.alphabet.text(f) for f in spec.forbidden),
        }
    if isinstance(spec, SoficGraph):
        g = spec.graph
        return {
            "kind": "sofic",
            "alphabet": list(g.alphabet.names),
            "vertices": list(g.vertices),
            "edges": [
                [g.vertices[s], g.alphabet.names[a], g.vertices[t]]
                for s, a, t in sorted(g.edges)
            ],
        }
    if isinstance(spec, DyckN):
        return {"kind": "dyck", "n": spec.n}
    if isinstance(spec, MarkovDyck):
        return {"kind": "markov_dyck", "matrix": [list(row) for row in spec.matrix]}
    if isinstance(spec, FullShift):
        return {"kind": "full", "n": spec.n}
    if isinstance(spec, Expanded):
        return {
            "kind": "expanded",
            "base": spec_to_payload(spec.base),
            "target": spec.base.alphabet.names[spec.target],
            "fresh": spec.fresh_name,
        }
    raise ValueError(f"unserializable spec {type(spec).__name__}")


def spec_from_payload(payload: dict) -> SubshiftSpec:
    if not isinstance(payload, dict) or "kind" not in payload:
        raise ValueError("spec payload must be an object with a 'kind' field")
    kind = payload["kind"]
    if kind == "sft":
        alphabet = Alphabet(tuple(payload["alphabet"]))
        forbidden = frozenset(alphabet.word(w) for w in payload["forbidden"])
        return SftForbidden(alphabet, forbidden)
    if kind == "sofic":
        alphabet = Alphabet(tuple(payload["alphabet"]))
        graph = from_names(
            alphabet,
            payload["vertices"],
            [tuple(e) for e in payload["edges"]],
        )
        return SoficGraph(graph)
    if kind == "dyck":
        return DyckN(int(payload["n"]))
    if kind == "markov_dyck":
        matrix = tuple(tuple(int(x) for x in row) for row in payload["matrix"])
        return MarkovDyck(matrix)
    if kind == "full":
        return FullShift(int(payload["n"]))
    if kind == "expanded":
        base = spec_from_payload(payload["base"])
        if not isinstance(base, (DyckN, MarkovDyck)):
            raise ValueError("expanded specs wrap only Dyck-type bases")
        target = base.alphabet.index(payload["target"])
        return Expanded(base=base, target=target, fresh_name=payload["fresh"])
    raise ValueError(f"unknown spec kind {kind!r}")


def spec_dumps(spec: SubshiftSpec) -> str:
    return dumps(spec_to_payload(spec))


def spec_loads(text: str) -> SubshiftSpec:
    return spec_from_payload(json.loads(text))


# -- systems -------------------------------------------------------------


def system_to_payload(sys: LambdaGraphSystem) -> dict:
    return {
        "alphabet": list(sys.alphabet.names),
        "levels": [
            {"size": level.size, "tags": list(level.tags)} for level in sys.levels
        ],
        "edges": [
            [[s, sys.alphabet.names[a], t] for s, a, t in layer]
            for layer in sys.edges
        ],
        "iota": [list(mapping) for mapping in sys.iota],
    }


def system_from_payload(payload: dict) -> LambdaGraphSystem:
    alphabet = Alphabet(tuple(payload["alphabet"]))
    levels = tuple(
        VertexLevel(size=int(item["size"]), tags=tuple(item["tags"]))
        for item in payload["levels"]
    )
    edges = tuple(
        tuple(sorted({(int(s), alphabet.index(a), int(t)) for s, a, t in layer}))
        for layer in payload["edges"]
    )
    iota = tuple(tuple(int(v) for v in mapping) for mapping in payload["iota"])
    return LambdaGraphSystem(alphabet=alphabet, levels=levels, edges=edges, iota=iota)


def system_dumps(sys: LambdaGraphSystem) -> str:
    return dumps(system_to_payload(sys))


def system_loads(text: str) -> LambdaGraphSystem:
    return system_from_payload(json.loads(text))


# -- verdicts and reports ------------------------------------------------


def _json_safe(value: Any) -> Any:
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    if isinstance(value, frozenset):
        return sorted(_json_safe(v) for v in value)
    if value is None or isinstance(value, (bool, int, str)):
        return value
    return str(value)


def verdict_payload(verdict: Verdict) -> dict:
    out: dict[str, Any] = {"verdict": verdict.kind}
    if verdict.witness is not None:
        out["witness"] = _json_safe(verdict.witness)
    if verdict.note:
        out["note"] = verdict.note
    return out


def group_payload(group) -> dict:
    return {
        "rank": group.free_rank,
        "torsion": list(group.torsion),
        "text": str(group),
    }


def report_to_payload(report: InvariantReport) -> dict:
    stabilized: dict[str, Any] = {"verdict": report.stabilized.kind}
    if report.stabilized.is_yes:
        stabilized["level"] = report.stabilized.witness
    if report.stabilized.note:
        stabilized["note"] = report.stabilized.note
    return {
        "sizes": list(report.sizes),
        "levels": [
            {
                "level": g.level,
                "k0": group_payload(g.k0),
                "k1": group_payload(g.k1),
                "bf0": group_payload(g.bf0),
                "bf1": group_payload(g.bf1),
            }
            for g in report.groups
        ],
        "connecting": list(report.connecting),
        "stabilized": stabilized,
    }


def report_dumps(report: InvariantReport) -> str:
    return dumps(report_to_payload(report))


# -- DOT -----------------------------------------------------------------


def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(sys: LambdaGraphSystem) -> str:
    """Graphviz rendering: one cluster per level, solid labeled edges
    downward, dashed edges for the collapse map.  Requires every edge layer
    to be populated; rejects degenerate systems."""
    for l, layer in enumerate(sys.edges):
        if not layer:
            raise ValueError(f"edge layer {l} is empty; nothing to draw")
    lines = ["digraph system {", "  rankdir=TB;", "  node [shape=box];"]
    for l, level in enumerate(sys.levels):
        lines.append(f"  subgraph cluster_{l} {{")
        lines.append(f'    label="level {l}";')
        for v in range(level.size):
            tag = level.tags[v] if level.tags[v] else str(v)
            lines.append(f"    {_dot_quote(f'{l}/{v}')} [label={_dot_quote(tag)}];")
        lines.append("  }")
    for l, layer in enumerate(sys.edges):
        for s, a, t in layer:
            lines.append(
                f"  {_dot_quote(f'{l}/{s}')} -> {_dot_quote(f'{l + 1}/{t}')} "
                f"[label={_dot_quote(sys.alphabet.names[a])}];"
            )
    for l, mapping in enumerate(sys.iota):
        for v, image in enumerate(mapping):
            lines.append(
                f"  {_dot_quote(f'{l + 1}/{v}')} -> {_dot_quote(f'{l}/{image}')} "
                f"[style=dashed, arrowhead=empty, constraint=false];"
            )
    lines.append("}")
    return "\n".join(lines) + "\n"
