"""Hard-instance generator: 3-Dimensional Matching -> Geodetic Set on a DAG.

Elements are 1-indexed (``x_1 .. x_n`` in each part), vertices 0-indexed.
Edge ``e`` is the ``e``-th triple of the instance, also 1-indexed.

Vertex ids are assigned block by block:

1. edge vertices ``u_i^e`` ordered by ``(i, e)``
2. ``d_1 .. d_n``
3. ``a``, ``b``, ``c``
4. element vertices ``v, w, t`` ordered by ``(delta, l)``
5. the nine hub vertices ``delta_idx``, each followed by its pendant
6. internal vertices of the edge paths, ordered by ``(i, e, delta, idx)``
7. internal vertices of the element paths, ordered by ``(delta, l)`` then
   ``delta_1 -> w``, ``delta_2 -> w``, ``delta_2 -> t``, ``delta_3 -> w``
8. edge-path pendants, in the same order as block 6

Adjacency paths are attached from every copy ``u_i^e`` of an edge.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .digraph import Digraph, extremal_vertices
from .errors import InvalidInstance, StructuralMismatch
from .metric import ClosureEngine, is_geodetic

DELTAS = ("alpha", "beta", "gamma")


@dataclass(frozen=True)
class ThreeDMInstance:
    n: int
    triples: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if self.n < 1:
            raise InvalidInstance("n must be at least 1")
        triples = tuple(tuple(int(x) for x in t) for t in self.triples)
        for t in triples:
            if len(t) != 3 or not all(1 <= x <= self.n for x in t):
                raise InvalidInstance(f"triple {t} out of range 1..{self.n}")
        if len(set(triples)) != len(triples):
            raise InvalidInstance("duplicate triple")
        object.__setattr__(self, "triples", triples)

    @property
    def m(self) -> int:
        return len(self.triples)


Label = tuple


def format_label(label: Label) -> str:
    role, *args = label
    return f"{role}({','.join(map(str, args))})" if args else role


@dataclass(frozen=True)
class ReductionOutput:
    digraph: Digraph
    k: int
    labels: tuple[Label, ...]
    lam: int

    def label_strings(self) -> list[str]:
        return [format_label(lb) for lb in self.labels]

    def index(self) -> dict[Label, int]:
        return {lb: v for v, lb in enumerate(self.labels)}


def target_size(n: int, m: int) -> int:
    return 9 * n * m + 4 * n + 12


def extremal_count(n: int, m: int) -> int:
    return 9 * n * m + 3 * n + 12


def edge_path_length(lam: int, coord: int, idx: int) -> int:
    return lam * lam + (idx - 2) * coord * lam


def element_path_lengths(lam: int, l: int) -> list[tuple[int, str, int]]:
    """(hub index, target kind, length) of the four paths into element ``l``."""
    sq = lam * lam
    return [(1, "w", sq + l * lam), (2, "w", sq), (2, "t", sq), (3, "w", sq - l * lam)]


class _Builder:
    def __init__(self):
        self.labels: list[Label] = []
        self.arcs: list[tuple[int, int]] = []

    def vertex(self, label: Label) -> int:
        self.labels.append(label)
        return len(self.labels) - 1


def reduce_3dm(inst: ThreeDMInstance) -> ReductionOutput:
    n, m = inst.n, inst.m
    if m < 1:
        raise InvalidInstance("the reduction needs at least one triple")
    lam = n + 1
    B = _Builder()
    u = {(i, e): B.vertex(("edge_vertex", i, e)) for i in range(1, n + 1) for e in range(1, m + 1)}
    d = {i: B.vertex(("d", i)) for i in range(1, n + 1)}
    a, b, c = B.vertex(("a",)), B.vertex(("b",)), B.vertex(("c",))
    elem = {}
    for delta in DELTAS:
        for l in range(1, n + 1):
            for kind in ("v", "w", "t"):
                elem[kind, delta, l] = B.vertex((f"element_{kind}", delta, l))
    hub, hub_pendant = {}, {}
    for delta in DELTAS:
        for idx in (1, 2, 3):
            hub[delta, idx] = B.vertex(("delta", delta, idx))
            hub_pendant[delta, idx] = B.vertex(("delta_pendant", delta, idx))

    for (i, e), x in u.items():
        B.arcs.append((x, d[i]))
    for x in u.values():
        B.arcs.append((a, x))
    for x in u.values():
        B.arcs.append((x, b))
    for i in range(1, n + 1):
        B.arcs.append((d[i], c))
    B.arcs.append((a, c))
    for delta in DELTAS:
        for l in range(1, n + 1):
            B.arcs.append((elem["w", delta, l], elem["v", delta, l]))
            B.arcs.append((elem["t", delta, l], elem["v", delta, l]))
    for key, h in hub.items():
        B.arcs.append((h, hub_pendant[key]))

    def path(src: int, dst: int, length: int, tag: tuple) -> int:
        prev = src
        for pos in range(1, length):
            x = B.vertex(tag + (pos,))
            B.arcs.append((prev, x))
            prev = x
        B.arcs.append((prev, dst))
        return prev

    before_hub = []
    for (i, e), x in u.items():
        triple = inst.triples[e - 1]
        for di, delta in enumerate(DELTAS):
            for idx in (1, 2, 3):
                length = edge_path_length(lam, triple[di], idx)
                last = path(x, hub[delta, idx], length, ("edge_path_internal", i, e, delta, idx))
                before_hub.append(((i, e, delta, idx), last))
    for delta in DELTAS:
        for l in range(1, n + 1):
            for idx, kind, length in element_path_lengths(lam, l):
                path(hub[delta, idx], elem[kind, delta, l], length, ("adj_path_internal", delta, idx, kind, l))
    for key, last in before_hub:
        p = B.vertex(("edge_path_pendant",) + key)
        B.arcs.append((last, p))
    for delta in DELTAS:
        for l in range(1, n + 1):
            B.arcs.append((a, elem["v", delta, l]))

    D = Digraph(len(B.labels), B.arcs)
    return ReductionOutput(D, target_size(n, m), tuple(B.labels), lam)


def solve_3dm_exact(inst: ThreeDMInstance) -> list[tuple[int, int, int]] | None:
    """A perfect 3D matching, or None. Exhaustive over n-subsets of triples."""
    for chosen in combinations(inst.triples, inst.n):
        if all(len({t[p] for t in chosen}) == inst.n for p in range(3)):
            return list(chosen)
    return None


def expected_arc_count(n: int, m: int) -> int:
    lam = n + 1
    return n * m * (12 + 9 * lam * lam) + 10 * n + 10 + 12 * n * lam * lam


def expected_vertex_count(n: int, m: int) -> int:
    lam = n + 1
    return n * m * (1 + 9 * lam * lam) + 12 * n * lam * lam - 2 * n + 21


def _is_dag(D: Digraph) -> bool:
    indeg = D.in_degree.tolist()
    stack = [v for v in range(D.n) if indeg[v] == 0]
    seen = 0
    while stack:
        x = stack.pop()
        seen += 1
        for y in D.out_adj[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                stack.append(y)
    return seen == D.n


def _forest_after_removal(D: Digraph, removed: set[int]) -> bool:
    parent = list(range(D.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edges = {(min(t, h), max(t, h)) for t, h in D.arcs if t not in removed and h not in removed}
    for x, y in edges:
        rx, ry = find(x), find(y)
        if rx == ry:
            return False
        parent[rx] = ry
    return True


def matching_witness(inst: ThreeDMInstance, out: ReductionOutput, matching: Sequence[tuple[int, int, int]]) -> tuple[int, ...]:
    """Extremal vertices plus ``u_i^{e_i}`` for the i-th matched triple."""
    idx = out.index()
    chosen = [idx["edge_vertex", i, inst.triples.index(tuple(t)) + 1] for i, t in enumerate(matching, start=1)]
    return tuple(sorted(set(extremal_vertices(out.digraph)) | set(chosen)))


def verify_reduction(inst: ThreeDMInstance, out: ReductionOutput, check_equivalence: bool | None = None,
                     exact_vertex_limit: int = 1200) -> dict:
    """Re-derive the structural guarantees of ``out``; raise on the first failure.

    The matching / geodetic-set equivalence is checked when
    ``check_equivalence`` is true, or when it is None and the digraph has at
    most ``exact_vertex_limit`` vertices.
    """
    from .exact import solve_exact
    from .results import SolveResult

    D, n, m, lam = out.digraph, inst.n, inst.m, out.lam
    sq = lam * lam
    idx = out.index()
    checks: list[str] = []

    def fail(check: str, detail: str = ""):
        raise StructuralMismatch(check, detail)

    if lam != n + 1 or out.k != target_size(n, m) or len(out.labels) != D.n or len(idx) != D.n:
        fail("parameters", "lambda, k or label map inconsistent with the instance")
    checks.append("parameters")

    if D.n != expected_vertex_count(n, m) or D.num_arcs != expected_arc_count(n, m):
        fail("size", f"{D.n} vertices / {D.num_arcs} arcs")
    checks.append("size")

    try:
        a, b, c = idx["a",], idx["b",], idx["c",]
        ucopies = {(i, e): idx["edge_vertex", i, e] for i in range(1, n + 1) for e in range(1, m + 1)}
        hub = {(dl, j): idx["delta", dl, j] for dl in DELTAS for j in (1, 2, 3)}
        elem = {(kd, dl, l): idx[f"element_{kd}", dl, l] for kd in "vwt" for dl in DELTAS for l in range(1, n + 1)}
        pend = {(dl, j): idx["delta_pendant", dl, j] for dl in DELTAS for j in (1, 2, 3)}
    except KeyError as exc:
        fail("labels", f"missing role {exc}")

    arcs = D.arc_set
    required = [(a, c)]
    for (i, e), x in ucopies.items():
        required += [(a, x), (x, b), (x, idx["d", i])]
    required += [(idx["d", i], c) for i in range(1, n + 1)]
    for dl in DELTAS:
        for l in range(1, n + 1):
            required += [(elem["w", dl, l], elem["v", dl, l]), (elem["t", dl, l], elem["v", dl, l]),
                         (a, elem["v", dl, l])]
    required += [(hub[key], pend[key]) for key in hub]
    missing = [arc for arc in required if arc not in arcs]
    if missing:
        fail("gadget_arcs", f"missing arc {missing[0]}")
    for v, lb in enumerate(out.labels):
        if lb[0] == "edge_path_pendant":
            parents = D.in_adj[v]
            _, i, e, dl, j = lb
            if len(parents) != 1 or hub[dl, j] not in D.out_adj[parents[0]] or D.out_adj[v]:
                fail("gadget_arcs", f"pendant {format_label(lb)} not attached right before its hub")
    checks.append("gadget_arcs")

    if not _is_dag(D):
        fail("dag")
    checks.append("dag")

    witness12 = {a, b, c} | set(hub.values())
    if not _forest_after_removal(D, witness12):
        fail("fvn_witness", "underlying graph keeps a cycle after removing the 12 hub vertices")
    checks.append("fvn_witness")

    ext = extremal_vertices(D)
    if len(ext) != extremal_count(n, m):
        fail("extremal_count", f"{len(ext)} != {extremal_count(n, m)}")
    expected_roles = {"a", "b", "c", "delta_pendant", "edge_path_pendant", "element_v"}
    stray = [v for v in ext if out.labels[v][0] not in expected_roles]
    if stray:
        fail("extremal_count", f"unexpected extremal vertex {format_label(out.labels[stray[0]])}")
    checks.append("extremal_count")

    eng = ClosureEngine(D)
    for (i, e), x in ucopies.items():
        fx = eng.forward(x)
        triple = inst.triples[e - 1]
        for di, dl in enumerate(DELTAS):
            for j in (1, 2, 3):
                if int(fx[hub[dl, j]]) != edge_path_length(lam, triple[di], j):
                    fail("path_lengths", f"edge copy ({i},{e}) to {dl}_{j}")
    for dl in DELTAS:
        for l in range(1, n + 1):
            for j, kind, length in element_path_lengths(lam, l):
                if int(eng.forward(hub[dl, j])[elem[kind, dl, l]]) != length:
                    fail("path_lengths", f"{dl}_{j} to {kind}_{l}")
    checks.append("path_lengths")

    for (i, e), x in ucopies.items():
        fx = eng.forward(x)
        triple = inst.triples[e - 1]
        for di, dl in enumerate(DELTAS):
            l = triple[di]
            w, t = elem["w", dl, l], elem["t", dl, l]
            legs = [int(fx[hub[dl, j]]) + int(eng.forward(hub[dl, j])[w]) for j in (1, 2, 3)]
            legs.append(int(fx[hub[dl, 2]]) + int(eng.forward(hub[dl, 2])[t]))
            if any(x_ != 2 * sq for x_ in legs) or int(fx[w]) != 2 * sq:
                fail("alignment", f"edge copy ({i},{e}) to element {dl}_{l}: {legs}")
    checks.append("alignment")

    report = {
        "checks": checks,
        "n": n,
        "m": m,
        "lambda": lam,
        "k": out.k,
        "vertices": D.n,
        "arcs": D.num_arcs,
        "extremal": len(ext),
    }
    if check_equivalence is None:
        check_equivalence = D.n <= exact_vertex_limit
    if check_equivalence:
        matching = solve_3dm_exact(inst)
        res = solve_exact(D, size_cap=out.k)
        found = isinstance(res, SolveResult) and res.size == out.k
        if isinstance(res, SolveResult) and res.size < out.k:
            fail("equivalence", f"geodetic set of size {res.size} < k")
        if (matching is not None) != found:
            fail("equivalence", f"matching={matching is not None} geodetic_k={found}")
        if matching is not None:
            w = matching_witness(inst, out, matching)
            if len(w) != out.k or not is_geodetic(D, w):
                fail("equivalence", "matching witness is not a geodetic set of size k")
        report["matching"] = [list(t) for t in matching] if matching else None
        report["geodetic_number"] = res.size if isinstance(res, SolveResult) else f">{out.k}"
        checks.append("equivalence")
    return report
