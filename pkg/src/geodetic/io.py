"""JSON instance formats and DOT export.

``digraph-json``::

    {"n": 3, "arcs": [[0, 1], [1, 2]]}

plus an optional ``"meta"`` object that is carried along but never
interpreted. ``3dm-json``::

    {"n": 2, "triples": [[1, 1, 2], [2, 2, 1]]}

with elements 1-indexed. The reduction label sidecar is
``{"k": K, "lambda": L, "labels": ["a", "edge_vertex(1,1)", ...]}``, one
label per vertex id.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .digraph import Digraph
from .errors import InvalidDigraph, InvalidInstance, ParseError
from .reduction import ReductionOutput, ThreeDMInstance
from .results import CapExceeded, SolveResult

DIGRAPH_FIELDS = {"n", "arcs", "meta"}
TDM_FIELDS = {"n", "triples"}


def _load(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _check_fields(doc, allowed: set[str], required: tuple[str, ...]) -> None:
    if not isinstance(doc, dict):
        raise ParseError("top-level value must be an object", "$")
    unknown = sorted(set(doc) - allowed)
    if unknown:
        raise ParseError(f"unknown field {unknown[0]!r}", unknown[0])
    for key in required:
        if key not in doc:
            raise ParseError(f"missing field {key!r}", key)


def _int_rows(rows, width: int, name: str) -> list[tuple[int, ...]]:
    if not isinstance(rows, list):
        raise ParseError(f"{name} must be an array", name)
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != width or not all(_is_int(x) for x in row):
            raise ParseError(f"expected an array of {width} integers", f"{name}[{i}]")
        out.append(tuple(row))
    return out


def digraph_from_obj(doc) -> Digraph:
    _check_fields(doc, DIGRAPH_FIELDS, ("n", "arcs"))
    n = doc["n"]
    if not _is_int(n) or n < 0:
        raise ParseError("n must be a non-negative integer", "n")
    if "meta" in doc and not isinstance(doc["meta"], dict):
        raise ParseError("meta must be an object", "meta")
    arcs = _int_rows(doc["arcs"], 2, "arcs")
    try:
        return Digraph(n, arcs)
    except InvalidDigraph as exc:
        raise ParseError(f"{type(exc).__name__}: {exc}", "arcs") from None


def parse_digraph(text: str) -> Digraph:
    return digraph_from_obj(_load(text))


def parse_meta(text: str) -> dict:
    doc = _load(text)
    digraph_from_obj(doc)
    return dict(doc.get("meta", {}))


def serialize_digraph(D: Digraph, meta: dict | None = None) -> str:
    """Canonical text: arcs sorted by (tail, head), one line per arc, trailing newline."""
    lines = ["{", f'  "n": {D.n},']
    arcs = sorted(D.arcs)
    if arcs:
        body = ",\n".join(f"    [{u}, {v}]" for u, v in arcs)
        lines.append(f'  "arcs": [\n{body}\n  ]' + ("," if meta else ""))
    else:
        lines.append('  "arcs": []' + ("," if meta else ""))
    if meta:
        lines.append(f'  "meta": {json.dumps(meta, sort_keys=True)}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_3dm(text: str) -> ThreeDMInstance:
    doc = _load(text)
    _check_fields(doc, TDM_FIELDS, ("n", "triples"))
    if not _is_int(doc["n"]):
        raise ParseError("n must be an integer", "n")
    triples = _int_rows(doc["triples"], 3, "triples")
    try:
        return ThreeDMInstance(doc["n"], tuple(triples))
    except InvalidInstance as exc:
        raise ParseError(str(exc), "triples") from None


def serialize_3dm(inst: ThreeDMInstance) -> str:
    body = ", ".join(f"[{a}, {b}, {c}]" for a, b, c in inst.triples)
    return f'{{"n": {inst.n}, "triples": [{body}]}}\n'


def serialize_labels(out: ReductionOutput) -> str:
    return json.dumps({"k": out.k, "lambda": out.lam, "labels": out.label_strings()}, indent=1) + "\n"


def parse_labels(text: str) -> list[str]:
    doc = _load(text)
    if isinstance(doc, dict) and isinstance(doc.get("labels"), list):
        labels = doc["labels"]
    elif isinstance(doc, list):
        labels = doc
    else:
        raise ParseError("expected a label array or an object with 'labels'", "labels")
    if not all(isinstance(x, str) for x in labels):
        raise ParseError("labels must be strings", "labels")
    return labels


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(D: Digraph, labels: list[str] | None = None) -> str:
    """DOT text: every vertex on its own line, then arcs sorted by (tail, head)."""
    if labels is not None and len(labels) != D.n:
        raise ValueError(f"{len(labels)} labels for {D.n} vertices")
    lines = ["digraph G {"]
    for v in range(D.n):
        lines.append(f"  {v} [label={_dot_quote(labels[v])}];" if labels else f"  {v};")
    lines += [f"  {u} -> {v};" for u, v in sorted(D.arcs)]
    lines.append("}")
    return "\n".join(lines) + "\n"


def read_text(path: str | Path) -> str:
    return Path(path).read_text(encoding="utf-8")


def write_text(path: str | Path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


def serialize_result(r: SolveResult | CapExceeded) -> str:
    """Timing-free JSON for a solver outcome; byte-identical across reruns."""
    if isinstance(r, CapExceeded):
        doc = {"cap_exceeded": r.cap}
    else:
        doc = {"algorithm": r.algorithm, "size": r.size, "verified": r.verified, "witness": list(r.witness)}
    return json.dumps(doc, sort_keys=True) + "\n"
