"""Benchmark matrix: generators x algorithms -> CSV.

A bench spec is JSON::

    {
      "algorithms": ["auto", "exact"],
      "instances": [
        {"kind": "oriented_fen", "n": [8, 10], "fen": 2, "seeds": [1, 2, 3]},
        {"kind": "ditree", "n": 1000, "p2": 0.3, "seed": 7}
      ],
      "size_cap": null
    }

Any instance field may be a scalar or a list; lists are expanded as a
cartesian product in the order kind, n, fen, m, p2, planted, seed. A ``3dm``
instance is benchmarked on its reduced digraph.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .digraph import Digraph, underlying_components, underlying_graph
from .dispatch import ALGORITHMS, solve_dispatch
from .errors import GeodeticError, ParseError
from .generators import KINDS, GenSpec
from .reduction import ThreeDMInstance, reduce_3dm
from .results import CapExceeded

COLUMNS = (
    "instance_id", "kind", "n", "arcs", "fen", "seed", "algorithm",
    "status", "size", "elapsed_s", "closure_evaluations", "subsets_examined",
)

_SPEC_FIELDS = {"algorithms", "instances", "size_cap"}
_INSTANCE_FIELDS = ("kind", "n", "fen", "m", "p2", "planted", "seed")


@dataclass(frozen=True)
class BenchRecord:
    instance_id: int
    kind: str
    n: int
    arcs: int
    fen: int
    seed: int
    algorithm: str
    status: str
    size: int | None
    elapsed_s: float
    closure_evaluations: int
    subsets_examined: int

    def row(self) -> list:
        return [
            self.instance_id, self.kind, self.n, self.arcs, self.fen, self.seed, self.algorithm,
            self.status, "" if self.size is None else self.size, f"{self.elapsed_s:.6f}",
            self.closure_evaluations, self.subsets_examined,
        ]


def _as_list(x) -> list:
    return x if isinstance(x, list) else [x]


def expand_spec(doc) -> tuple[list[GenSpec], list[str], int | None]:
    if not isinstance(doc, dict):
        raise ParseError("bench spec must be an object", "$")
    unknown = sorted(set(doc) - _SPEC_FIELDS)
    if unknown:
        raise ParseError(f"unknown field {unknown[0]!r}", unknown[0])
    algorithms = _as_list(doc.get("algorithms", ["auto"]))
    for a in algorithms:
        if a not in ALGORITHMS:
            raise ParseError(f"unknown algorithm {a!r}", "algorithms")
    cap = doc.get("size_cap")
    specs: list[GenSpec] = []
    for i, entry in enumerate(_as_list(doc.get("instances", []))):
        where = f"instances[{i}]"
        if not isinstance(entry, dict):
            raise ParseError("instance entry must be an object", where)
        entry = dict(entry)
        if "seeds" in entry:
            entry["seed"] = entry.pop("seeds")
        bad = sorted(set(entry) - set(_INSTANCE_FIELDS))
        if bad:
            raise ParseError(f"unknown field {bad[0]!r}", where)
        if entry.get("kind") not in KINDS:
            raise ParseError(f"kind must be one of {', '.join(KINDS)}", where + ".kind")
        for f in ("n", "seed"):
            if f not in entry:
                raise ParseError(f"missing field {f!r}", where)
        keys = [k for k in _INSTANCE_FIELDS if k in entry]
        for combo in itertools.product(*(_as_list(entry[k]) for k in keys)):
            specs.append(GenSpec(**dict(zip(keys, combo))))
    return specs, algorithms, cap


def _run_one(job: tuple[int, GenSpec, str, int | None]) -> BenchRecord:
    iid, spec, algo, cap = job
    obj = spec.generate()
    D = reduce_3dm(obj).digraph if isinstance(obj, ThreeDMInstance) else obj
    fen = _fen(D)
    try:
        r = solve_dispatch(D, algo, size_cap=cap)
    except GeodeticError as exc:
        return BenchRecord(iid, spec.kind, D.n, D.num_arcs, fen, spec.seed, algo,
                           f"error:{type(exc).__name__}", None, 0.0, 0, 0)
    st = r.stats
    if isinstance(r, CapExceeded):
        return BenchRecord(iid, spec.kind, D.n, D.num_arcs, fen, spec.seed, algo, "cap_exceeded", None,
                           st.get("elapsed", 0.0), 0, 0)
    return BenchRecord(iid, spec.kind, D.n, D.num_arcs, fen, spec.seed, algo, "ok", r.size,
                       st["elapsed"], st["closure_evaluations"], st["subsets_examined"])


def _fen(D: Digraph) -> int:
    return len(underlying_graph(D).edges) - D.n + underlying_components(D)[0]


def run_bench(doc, jobs: int = 1) -> list[BenchRecord]:
    """Run every (instance, algorithm) pair; records come back ordered by instance id."""
    specs, algorithms, cap = expand_spec(doc)
    work = [(i, s, a, cap) for i, (s, a) in enumerate(itertools.product(specs, algorithms))]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(jobs) as pool:
            records = list(pool.map(_run_one, work))
    else:
        records = [_run_one(w) for w in work]
    return sorted(records, key=lambda r: r.instance_id)


def records_to_csv(records: list[BenchRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in records:
        w.writerow(r.row())
    return buf.getvalue()


def load_spec(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
