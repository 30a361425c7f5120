"""Command-line entry point: ``geodetic <command> ...``.

Exit status: 0 on success, 2 when ``verify`` rejects the set (or
``reduce3dm --check`` finds a structural mismatch), 1 on any operational
error. Errors are reported as one JSON line on stderr,
``{"error": "<ExceptionType>", "message": "..."}``.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import io as gio
from .bench import load_spec, records_to_csv, run_bench
from .decomposition import decompose, extract_candidates
from .digraph import extremal_vertices, is_tree
from .dispatch import ALGORITHMS, solve_dispatch
from .errors import GeodeticError, ParseError, StructuralMismatch
from .generators import KINDS, GenSpec
from .metric import closure
from .reduction import ThreeDMInstance, reduce_3dm, verify_reduction
from .results import CapExceeded

EXIT_OK, EXIT_ERROR, EXIT_REJECTED = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _parse_set(text: str, n: int) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        ids = [int(x) for x in text.split(",")]
    except ValueError:
        raise ParseError(f"vertex set must be comma-separated integers, got {text!r}", "--set") from None
    for v in ids:
        if not 0 <= v < n:
            raise ParseError(f"vertex {v} out of range 0..{n - 1}", "--set")
    return ids


def cmd_solve(args) -> int:
    D = gio.parse_digraph(gio.read_text(args.input))
    r = solve_dispatch(D, args.algo, size_cap=args.cap, workers=args.workers)
    if args.json:
        sys.stdout.write(gio.serialize_result(r))
        return EXIT_OK
    if isinstance(r, CapExceeded):
        print(f"cap_exceeded={r.cap}")
        return EXIT_OK
    print(f"size={r.size}")
    if args.witness:
        print("witness=" + ",".join(map(str, r.witness)))
    return EXIT_OK


def cmd_verify(args) -> int:
    D = gio.parse_digraph(gio.read_text(args.input))
    S = _parse_set(args.set, D.n)
    missing = sorted(set(range(D.n)) - closure(D, S))
    if missing:
        print("geodetic=false uncovered=" + ",".join(map(str, missing)))
        return EXIT_REJECTED
    print("geodetic=true")
    return EXIT_OK


def cmd_reduce3dm(args) -> int:
    inst = gio.parse_3dm(gio.read_text(args.input))
    out = reduce_3dm(inst)
    D = out.digraph
    meta = {"source": "reduce3dm", "k": out.k, "lambda": out.lam, "n3dm": inst.n, "m3dm": inst.m}
    gio.write_text(args.out, gio.serialize_digraph(D, meta))
    if args.labels:
        gio.write_text(args.labels, gio.serialize_labels(out))
    if args.dot:
        gio.write_text(args.dot, gio.export_dot(D, out.label_strings()))
    print(f"k={out.k} lambda={out.lam} vertices={D.n} arcs={D.num_arcs}")
    if args.check:
        try:
            report = verify_reduction(inst, out, check_equivalence=False)
        except StructuralMismatch as exc:
            _report(exc)
            return EXIT_REJECTED
        print("checks=" + ",".join(report["checks"]))
    return EXIT_OK


def cmd_gen(args) -> int:
    spec = GenSpec(args.kind, args.n, args.seed, fen=args.fen, m=args.m, p2=args.p2, planted=args.planted)
    obj = spec.generate()
    if isinstance(obj, ThreeDMInstance):
        text = gio.serialize_3dm(obj)
    else:
        text = gio.serialize_digraph(obj)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        gio.write_text(args.out, text)
    return EXIT_OK


def cmd_stats(args) -> int:
    D = gio.parse_digraph(gio.read_text(args.input))
    dec = decompose(D)
    info = dec.summary()
    info.update(
        n=D.n,
        arcs=D.num_arcs,
        is_tree=is_tree(D),
        oriented=D.is_oriented(),
        extremal=len(extremal_vertices(D)),
    )
    if D.is_oriented():
        info["candidates"] = len(extract_candidates(D, dec))
    print(json.dumps(info, sort_keys=True))
    return EXIT_OK


def cmd_dot(args) -> int:
    D = gio.parse_digraph(gio.read_text(args.input))
    labels = gio.parse_labels(gio.read_text(args.labels)) if args.labels else None
    text = gio.export_dot(D, labels)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        gio.write_text(args.out, text)
    return EXIT_OK


def cmd_bench(args) -> int:
    records = run_bench(load_spec(gio.read_text(args.spec)), jobs=args.jobs)
    gio.write_text(args.out, records_to_csv(records))
    print(f"records={len(records)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="geodetic", description="Minimum geodetic sets in digraphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="minimum geodetic set of a digraph-json file")
    s.add_argument("--input", required=True)
    s.add_argument("--algo", choices=ALGORITHMS, default="auto")
    s.add_argument("--cap", type=int, default=None, help="give up above this size")
    s.add_argument("--witness", action="store_true", help="also print the vertex ids")
    s.add_argument("--json", action="store_true", help="print the result as one JSON object")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("verify", help="check whether a vertex set is geodetic")
    s.add_argument("--input", required=True)
    s.add_argument("--set", required=True, help='comma-separated ids, e.g. "0,2"')
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("reduce3dm", help="build the geodetic-set instance of a 3dm-json file")
    s.add_argument("--input", required=True)
    s.add_argument("--out", required=True)
    s.add_argument("--labels", default=None)
    s.add_argument("--dot", default=None)
    s.add_argument("--check", action="store_true", help="run the structural checks")
    s.set_defaults(func=cmd_reduce3dm)

    s = sub.add_parser("gen", help="generate a seeded instance")
    s.add_argument("kind", choices=KINDS)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--fen", type=int, default=0)
    s.add_argument("--m", type=int, default=0)
    s.add_argument("--p2", type=float, default=0.0)
    s.add_argument("--planted", action="store_true")
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--out", default="-")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("stats", help="decomposition summary as JSON")
    s.add_argument("--input", required=True)
    s.set_defaults(func=cmd_stats)

    s = sub.add_parser("dot", help="export a digraph as DOT")
    s.add_argument("--input", required=True)
    s.add_argument("--labels", default=None)
    s.add_argument("--out", default="-")
    s.set_defaults(func=cmd_dot)

    s = sub.add_parser("bench", help="run a benchmark matrix and write CSV")
    s.add_argument("--spec", required=True)
    s.add_argument("--out", required=True)
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_bench)
    return p


def _report(exc: BaseException, kind: str | None = None) -> None:
    msg = " ".join(str(exc).split())
    sys.stderr.write(json.dumps({"error": kind or type(exc).__name__, "message": msg}) + "\n")


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        _report(exc, "UsageError")
    except (GeodeticError, ValueError, OSError) as exc:
        _report(exc)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
