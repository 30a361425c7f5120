"""Seeded instance generators.

All randomness comes from :class:`~geodetic.rng.SplitMix64`, so a seed
reproduces the same instance on any platform. Tree skeletons are uniform
labelled trees decoded from a random Pruefer sequence.
"""

from __future__ import annotations

from dataclasses import dataclass

from .digraph import Digraph
from .errors import InfeasibleParameters
from .reduction import ThreeDMInstance
from .rng import SplitMix64


def random_tree_edges(n: int, rng: SplitMix64) -> list[tuple[int, int]]:
    """Edges of a uniform random labelled tree on ``0..n-1`` (linear-time Pruefer decoding)."""
    if n <= 1:
        return []
    if n == 2:
        return [(0, 1)]
    seq = [rng.below(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    ptr = degree.index(1)
    leaf = ptr
    edges = []
    for x in seq:
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
        if degree[x] == 1 and x < ptr:
            leaf = x
        else:
            ptr += 1
            while degree[ptr] != 1:
                ptr += 1
            leaf = ptr
    edges.append((leaf, n - 1))
    return edges


def _orient(edges, rng: SplitMix64) -> list[tuple[int, int]]:
    return [(u, v) if rng.below(2) == 0 else (v, u) for u, v in edges]


def gen_ditree(n: int, p2: float, seed: int) -> Digraph:
    """Random ditree: each tree edge becomes a 2-cycle with probability ``p2``,
    otherwise a single arc in a uniformly random direction."""
    if n < 1:
        raise InfeasibleParameters("n must be at least 1")
    if not 0.0 <= p2 <= 1.0:
        raise InfeasibleParameters("p2 must lie in [0, 1]")
    rng = SplitMix64(seed)
    arcs = []
    for u, v in random_tree_edges(n, rng):
        if rng.random() < p2:
            arcs += [(u, v), (v, u)]
        else:
            arcs.append((u, v) if rng.below(2) == 0 else (v, u))
    return Digraph(n, arcs)


def gen_oriented_tree(n: int, seed: int) -> Digraph:
    return gen_ditree(n, 0.0, seed)


def _extra_edges(n: int, tree: list[tuple[int, int]], count: int, rng: SplitMix64) -> list[tuple[int, int]]:
    present = {(min(u, v), max(u, v)) for u, v in tree}
    available = n * (n - 1) // 2 - len(present)
    if count > available:
        raise InfeasibleParameters(f"cannot add {count} edges, only {available} non-edges")
    extra: list[tuple[int, int]] = []
    if 2 * count <= available:
        while len(extra) < count:
            u, v = rng.below(n), rng.below(n)
            if u == v:
                continue
            key = (min(u, v), max(u, v))
            if key not in present:
                present.add(key)
                extra.append(key)
    else:
        pool = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in present]
        for i in range(count):
            j = i + rng.below(len(pool) - i)
            pool[i], pool[j] = pool[j], pool[i]
        extra = pool[:count]
    return extra


def _check_fen(n: int, fen: int) -> None:
    if n < 1 or fen < 0:
        raise InfeasibleParameters("need n >= 1 and fen >= 0")
    if fen >= 1 and n < 3:
        raise InfeasibleParameters("a cycle needs at least 3 vertices")
    if fen > n * (n - 1) // 2 - (n - 1):
        raise InfeasibleParameters(f"fen {fen} too large for n = {n}")


def gen_oriented_fen(n: int, fen_target: int, seed: int) -> Digraph:
    """Connected oriented graph whose underlying graph has feedback edge number ``fen_target``."""
    _check_fen(n, fen_target)
    rng = SplitMix64(seed)
    tree = random_tree_edges(n, rng)
    edges = tree + _extra_edges(n, tree, fen_target, rng)
    return Digraph(n, _orient(edges, rng))


def gen_dag(n: int, fen_target: int, seed: int) -> Digraph:
    """Connected DAG: the :func:`gen_oriented_fen` skeleton oriented along a random order."""
    _check_fen(n, fen_target)
    rng = SplitMix64(seed)
    tree = random_tree_edges(n, rng)
    edges = tree + _extra_edges(n, tree, fen_target, rng)
    rank = rng.permutation(n)
    return Digraph(n, [(u, v) if rank[u] < rank[v] else (v, u) for u, v in edges])


def gen_3dm(n: int, m: int, planted: bool, seed: int) -> ThreeDMInstance:
    """Random 3DM instance; ``planted`` hides a perfect matching among the triples."""
    if n < 1 or m < 0:
        raise InfeasibleParameters("need n >= 1 and m >= 0")
    if m > n ** 3:
        raise InfeasibleParameters(f"only {n ** 3} distinct triples exist")
    if planted and m < n:
        raise InfeasibleParameters("a planted matching needs m >= n")
    rng = SplitMix64(seed)
    triples: list[tuple[int, int, int]] = []
    if planted:
        pb, pg = rng.permutation(n), rng.permutation(n)
        triples = [(i + 1, pb[i] + 1, pg[i] + 1) for i in range(n)]
    seen = set(triples)
    while len(triples) < m:
        code = rng.below(n ** 3)
        t = (code // (n * n) + 1, (code // n) % n + 1, code % n + 1)
        if t not in seen:
            seen.add(t)
            triples.append(t)
    rng.shuffle(triples)
    return ThreeDMInstance(n, tuple(triples))


KINDS = ("ditree", "oriented_tree", "oriented_fen", "dag", "3dm")


@dataclass(frozen=True)
class GenSpec:
    kind: str
    n: int
    seed: int
    fen: int = 0
    m: int = 0
    p2: float = 0.0
    planted: bool = False

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InfeasibleParameters(f"unknown generator kind {self.kind!r}")
        if not 0.0 <= self.p2 <= 1.0:
            raise InfeasibleParameters("p2 must lie in [0, 1]")
        object.__setattr__(self, "seed", int(self.seed) & ((1 << 64) - 1))

    def generate(self) -> Digraph | ThreeDMInstance:
        if self.kind == "ditree":
            return gen_ditree(self.n, self.p2, self.seed)
        if self.kind == "oriented_tree":
            return gen_oriented_tree(self.n, self.seed)
        if self.kind == "oriented_fen":
            return gen_oriented_fen(self.n, self.fen, self.seed)
        if self.kind == "dag":
            return gen_dag(self.n, self.fen, self.seed)
        return gen_3dm(self.n, self.m, self.planted, self.seed)
