"""Linear-time minimum geodetic set on ditrees, plus the contracted ditree.

A ditree is a digraph (2-cycles allowed) whose underlying simple graph is a
tree. A minimum geodetic set consists of every leaf together with one vertex
from each source set and each sink set that contains no leaf; any member of
such a set may represent it, and the smallest id is taken here.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

import numpy as np

from ._kernels import ditree_kernel
from .digraph import Digraph, is_tree, strongly_connected_components
from .errors import NotATree
from .metric import is_geodetic
from .results import SolveResult


@dataclass(frozen=True)
class ContractedDitree:
    contracted: Digraph
    vertex_map: tuple[int, ...]


def _require_tree(T: Digraph) -> None:
    if not is_tree(T):
        raise NotATree(f"underlying graph of {T!r} is not a tree")


def contract_ditree(T: Digraph, seed: int | None = None) -> ContractedDitree:
    """Contract, until none is left, every 2-cycle whose endpoints are both non-leaves.

    Leaf status is recomputed after each contraction. ``seed`` shuffles the
    order in which eligible 2-cycles are picked; the quotient does not depend
    on it. Contracted vertices are numbered by their smallest original member.
    """
    _require_tree(T)
    parent = list(range(T.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    # Underlying neighbour sets of the current quotient, keyed by representative.
    nbrs: dict[int, set[int]] = {v: set() for v in range(T.n)}
    for t, h in T.arcs:
        nbrs[t].add(h)
        nbrs[h].add(t)
    arcs = set(T.arcs)
    rng = random.Random(seed) if seed is not None else None

    while True:
        eligible = sorted(
            (u, v) for (u, v) in arcs
            if u < v and (v, u) in arcs and len(nbrs[u]) >= 2 and len(nbrs[v]) >= 2
        )
        if not eligible:
            break
        u, v = rng.choice(eligible) if rng else eligible[0]
        keep, drop = min(u, v), max(u, v)
        parent[drop] = keep
        for w in nbrs.pop(drop):
            nbrs[w].discard(drop)
            if w != keep:
                nbrs[w].add(keep)
                nbrs[keep].add(w)
        nbrs[keep].discard(drop)
        new_arcs = set()
        for a, b in arcs:
            a = keep if a == drop else a
            b = keep if b == drop else b
            if a != b:
                new_arcs.add((a, b))
        arcs = new_arcs

    reps = sorted({find(v) for v in range(T.n)})
    # A representative is always the smallest member of its class.
    index = {r: i for i, r in enumerate(reps)}
    vertex_map = tuple(index[find(v)] for v in range(T.n))
    out = sorted((index[a], index[b]) for a, b in arcs)
    return ContractedDitree(Digraph(len(reps), out), vertex_map)


def leafless_extreme_sets(T: Digraph):
    """SCC partition and ids of source/sink sets that contain no leaf."""
    scc = strongly_connected_components(T)
    chosen = (scc.is_source_set | scc.is_sink_set) & ~scc.contains_leaf
    return scc, np.flatnonzero(chosen)


def solve_ditree(T: Digraph, verify: bool = True) -> SolveResult:
    """Minimum geodetic set of a ditree in O(n + |arcs|).

    ``verify=False`` skips the quadratic closure re-check (used for large
    scaling runs); the result then carries ``verified=False``.
    """
    start = time.perf_counter()
    ok, take, n_sets = ditree_kernel(T.n, T.tails, T.heads)
    if not ok:
        raise NotATree(f"underlying graph of {T!r} is not a tree")
    elapsed = time.perf_counter() - start
    w = tuple(np.flatnonzero(take).tolist())
    stats = {"elapsed": elapsed, "leafless_sets": int(n_sets)}
    return SolveResult(w, "ditree", is_geodetic(T, w) if verify else False, stats)
