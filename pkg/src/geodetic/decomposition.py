"""Base graph / core path / hanging tree decomposition of a digraph.

The base graph is what survives iterated removal of vertices of degree at
most one in the underlying simple graph. Core vertices have base degree at
least three; core paths join core vertices through base-degree-2 vertices
(a core path whose ends coincide is a core cycle). A base component without
any core vertex is a bare cycle. Everything removed hangs off a base vertex
(its root) as a tree; a component that is entirely a tree has no root.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from enum import Enum

from .digraph import Digraph, underlying_graph
from .errors import HasTwoCycle


class PathClass(str, Enum):
    DIPATH = "dipath"
    ONE_EXTREMAL = "one_extremal"
    TWO_EXTREMALS = "two_extremals"
    MANY_EXTREMALS = "many_extremals"


@dataclass(frozen=True)
class CorePath:
    """An oriented core path ``endpoint_a - inner... - endpoint_b``.

    ``inner_extremals`` are indices into ``inner`` of the vertices at which
    the orientation turns (both path arcs leave, or both enter). For a
    dipath the path is normalised to run from ``endpoint_a`` to
    ``endpoint_b``. ``path_class`` and ``candidates`` are ``None`` when the
    path carries a 2-cycle.
    """

    endpoint_a: int
    endpoint_b: int
    inner: tuple[int, ...]
    inner_extremals: tuple[int, ...] | None
    path_class: PathClass | None
    candidates: tuple[int, ...] | None

    @property
    def is_core_cycle(self) -> bool:
        return self.endpoint_a == self.endpoint_b

    @property
    def vertices(self) -> tuple[int, ...]:
        return (self.endpoint_a,) + self.inner + (self.endpoint_b,)


@dataclass(frozen=True)
class HangingTree:
    root: int | None
    members: tuple[int, ...]


@dataclass(frozen=True)
class Decomposition:
    base_vertices: frozenset[int]
    core_vertices: frozenset[int]
    core_paths: tuple[CorePath, ...]
    hanging_trees: tuple[HangingTree, ...]
    bare_cycle_components: tuple[tuple[int, ...], ...]
    components: tuple[tuple[int, ...], ...]
    fen_per_component: tuple[int, ...]

    @property
    def fen_total(self) -> int:
        return sum(self.fen_per_component)

    def summary(self) -> dict:
        by_class = Counter(p.path_class.value for p in self.core_paths if p.path_class is not None)
        return {
            "fen_total": self.fen_total,
            "components": len(self.components),
            "base_vertices": len(self.base_vertices),
            "core_vertices": len(self.core_vertices),
            "core_paths": len(self.core_paths),
            "core_cycles": sum(p.is_core_cycle for p in self.core_paths),
            "core_paths_by_class": {c.value: by_class.get(c.value, 0) for c in PathClass},
            "hanging_trees": len(self.hanging_trees),
            "bare_cycles": len(self.bare_cycle_components),
        }


def _orient(D: Digraph, path: list[int]) -> list[int] | None:
    """+1 / -1 per consecutive pair following / against the arc; None on a 2-cycle."""
    signs = []
    for p, q in zip(path, path[1:]):
        fwd, bwd = D.has_arc(p, q), D.has_arc(q, p)
        if fwd and bwd:
            return None
        signs.append(1 if fwd else -1)
    return signs


def classify_core_path(D: Digraph, path: list[int]) -> CorePath:
    a, b, inner = path[0], path[-1], path[1:-1]
    signs = _orient(D, path)
    if signs is None:
        return CorePath(a, b, tuple(inner), None, None, None)
    # inner[k] sits between signs[k] and signs[k + 1]
    turns = [k for k in range(len(inner)) if signs[k] != signs[k + 1]]
    if not turns:
        if inner and signs[0] < 0:
            path = path[::-1]
            a, b, inner = path[0], path[-1], path[1:-1]
        cand = sorted({inner[0], inner[-1]}) if inner else []
        cls = PathClass.DIPATH
    elif len(turns) == 1:
        cand = sorted({inner[0], inner[-1]} - {inner[turns[0]]})
        cls = PathClass.ONE_EXTREMAL
    elif len(turns) == 2:
        i, j = turns
        # signs[i + 1] > 0 means the segment runs from inner[i] towards inner[j],
        # i.e. inner[i] is the source-type turn.
        succ = i + 1 if signs[i + 1] > 0 else j - 1
        cand = [inner[succ]] if succ not in (i, j) else []
        cls = PathClass.TWO_EXTREMALS
    else:
        cand = []
        cls = PathClass.MANY_EXTREMALS
    return CorePath(a, b, tuple(inner), tuple(turns), cls, tuple(cand))


def _strip_leaves(adj, n: int) -> list[bool]:
    deg = [len(a) for a in adj]
    alive = [True] * n
    queue = deque(v for v in range(n) if deg[v] <= 1)
    while queue:
        v = queue.popleft()
        if not alive[v]:
            continue
        alive[v] = False
        for w in adj[v]:
            if alive[w]:
                deg[w] -= 1
                if deg[w] == 1:
                    queue.append(w)
    return alive


def decompose(D: Digraph) -> Decomposition:
    G = underlying_graph(D)
    adj = G.adjacency
    comps = G.components()
    comp_of = [0] * D.n
    for ci, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = ci
    edge_count = [0] * len(comps)
    for u, _ in G.edges:
        edge_count[comp_of[u]] += 1
    fen = tuple(edge_count[ci] - len(c) + 1 for ci, c in enumerate(comps))

    alive = _strip_leaves(adj, D.n)
    base = frozenset(v for v in range(D.n) if alive[v])
    base_adj = {v: [w for w in adj[v] if alive[w]] for v in base}
    core = frozenset(v for v in base if len(base_adj[v]) >= 3)

    paths: list[CorePath] = []
    seen: set = set()
    for a in sorted(core):
        for x in base_adj[a]:
            walk = [a, x]
            while walk[-1] not in core:
                cur, prev = walk[-1], walk[-2]
                nxt = base_adj[cur][0] if base_adj[cur][0] != prev else base_adj[cur][1]
                walk.append(nxt)
            key = tuple(sorted([(walk[0], walk[1]), (walk[-1], walk[-2])]))
            if key in seen:
                continue
            seen.add(key)
            paths.append(classify_core_path(D, walk))

    bare: list[tuple[int, ...]] = []
    trees: list[HangingTree] = []
    for comp in comps:
        comp_base = [v for v in comp if alive[v]]
        if not comp_base:
            trees.append(HangingTree(None, tuple(comp)))
            continue
        if not any(v in core for v in comp_base):
            bare.append(tuple(comp_base))
        for r in comp_base:
            members = []
            stack = [w for w in adj[r] if not alive[w]]
            seen_t = set(stack)
            while stack:
                x = stack.pop()
                members.append(x)
                for y in adj[x]:
                    if not alive[y] and y not in seen_t:
                        seen_t.add(y)
                        stack.append(y)
            if members:
                trees.append(HangingTree(r, tuple(sorted(members))))

    return Decomposition(
        base_vertices=base,
        core_vertices=core,
        core_paths=tuple(paths),
        hanging_trees=tuple(trees),
        bare_cycle_components=tuple(bare),
        components=tuple(tuple(c) for c in comps),
        fen_per_component=fen,
    )


def extract_candidates(D: Digraph, dec: Decomposition | None = None) -> frozenset[int]:
    """Core vertices plus the per-path candidate inner vertices."""
    twos = D.two_cycles()
    if twos:
        raise HasTwoCycle(*twos[0])
    if dec is None:
        dec = decompose(D)
    out = set(dec.core_vertices)
    for p in dec.core_paths:
        out.update(p.candidates)
    return frozenset(out)
