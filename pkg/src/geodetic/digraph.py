"""Digraph carrier, vertex classification, underlying graph and SCCs.

Vertices are the dense integers ``0..n-1``. Arcs are stored as two parallel
int64 arrays so that the linear-time routines stay vectorised on graphs with
millions of vertices; tuple-based adjacency is derived lazily for the
small-graph algorithms.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import DuplicateArc, IndexOutOfRange, SelfLoop


def _as_arc_array(arcs) -> np.ndarray:
    if isinstance(arcs, np.ndarray):
        arr = arcs.astype(np.int64, copy=False)
    else:
        arr = np.asarray(list(arcs), dtype=np.int64)
    if arr.size == 0:
        return np.empty((0, 2), dtype=np.int64)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError("arcs must be a sequence of (tail, head) pairs")
    return arr


class Digraph:
    """Immutable simple digraph on ``0..n-1`` with an ordered arc sequence.

    Self-loops and repeated arcs are rejected. A 2-cycle is the pair of
    arcs ``(u, v)`` and ``(v, u)``, each of which is unique.
    """

    def __init__(self, n: int, arcs: Iterable[Sequence[int]] | np.ndarray = ()):
        n = int(n)
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        arr = _as_arc_array(arcs)
        tails = np.ascontiguousarray(arr[:, 0])
        heads = np.ascontiguousarray(arr[:, 1])
        if len(tails):
            bad = (tails < 0) | (tails >= n) | (heads < 0) | (heads >= n)
            if bad.any():
                i = int(np.argmax(bad))
                t, h = int(tails[i]), int(heads[i])
                raise IndexOutOfRange(t if not 0 <= t < n else h, n)
            loops = tails == heads
            if loops.any():
                raise SelfLoop(int(tails[int(np.argmax(loops))]))
            keys = tails * n + heads
            order = np.argsort(keys, kind="stable")
            ks = keys[order]
            rep = ks[1:] == ks[:-1]
            if rep.any():
                i = int(order[1:][rep].min())
                raise DuplicateArc(int(tails[i]), int(heads[i]))
        else:
            ks = np.empty(0, dtype=np.int64)
        # sorted arc keys tail * n + head, reused for membership tests
        self._keys = ks
        tails.flags.writeable = False
        heads.flags.writeable = False
        self._n = n
        self._tails = tails
        self._heads = heads

    @property
    def n(self) -> int:
        return self._n

    @property
    def num_arcs(self) -> int:
        return len(self._tails)

    @property
    def tails(self) -> np.ndarray:
        return self._tails

    @property
    def heads(self) -> np.ndarray:
        return self._heads

    @cached_property
    def arcs(self) -> tuple[tuple[int, int], ...]:
        return tuple(zip(self._tails.tolist(), self._heads.tolist()))

    @cached_property
    def arc_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.arcs)

    @cached_property
    def out_adj(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self._n)]
        for t, h in self.arcs:
            adj[t].append(h)
        return tuple(map(tuple, adj))

    @cached_property
    def in_adj(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self._n)]
        for t, h in self.arcs:
            adj[h].append(t)
        return tuple(map(tuple, adj))

    @cached_property
    def out_degree(self) -> np.ndarray:
        return np.bincount(self._tails, minlength=self._n)

    @cached_property
    def in_degree(self) -> np.ndarray:
        return np.bincount(self._heads, minlength=self._n)

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arc_set

    @cached_property
    def two_cycle_mask(self) -> np.ndarray:
        """Boolean mask over arcs: True where the reverse arc also exists."""
        if not self.num_arcs:
            return np.zeros(0, dtype=bool)
        rev = self._heads * self._n + self._tails
        pos = np.searchsorted(self._keys, rev)
        pos[pos == len(self._keys)] = 0
        return self._keys[pos] == rev

    @cached_property
    def two_cycle_degree(self) -> np.ndarray:
        """Number of 2-cycles through each vertex."""
        A = self.csr
        both = A.multiply(A.T.tocsr()).tocsr()
        return np.diff(both.indptr)

    @cached_property
    def csr(self) -> csr_matrix:
        """Adjacency matrix (int8) in CSR form, for scipy graph routines."""
        return csr_matrix((np.ones(self.num_arcs, dtype=np.int8), (self._tails, self._heads)),
                          shape=(self._n, self._n))

    def two_cycles(self) -> list[tuple[int, int]]:
        """All 2-cycles as ``(u, v)`` with ``u < v``, sorted."""
        m = self.two_cycle_mask & (self._tails < self._heads)
        return sorted(zip(self._tails[m].tolist(), self._heads[m].tolist()))

    def is_oriented(self) -> bool:
        return not self.two_cycle_mask.any()

    def reverse(self) -> Digraph:
        return Digraph(self._n, np.stack([self._heads, self._tails], axis=1))

    def induced(self, vertices: Iterable[int]) -> tuple[Digraph, tuple[int, ...]]:
        """Induced subdigraph relabelled to ``0..k-1`` in ascending original order.

        Returns the subdigraph and the tuple mapping new ids to original ids.
        """
        keep = tuple(sorted(set(vertices)))
        index = np.full(self._n, -1, dtype=np.int64)
        index[list(keep)] = np.arange(len(keep))
        t, h = index[self._tails], index[self._heads]
        mask = (t >= 0) & (h >= 0)
        return Digraph(len(keep), np.stack([t[mask], h[mask]], axis=1)), keep

    def __eq__(self, other) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return (
            self._n == other._n
            and np.array_equal(self._tails, other._tails)
            and np.array_equal(self._heads, other._heads)
        )

    def __hash__(self) -> int:
        return hash((self._n, self.arcs))

    def __repr__(self) -> str:
        return f"Digraph(n={self._n}, arcs={self.num_arcs})"

    def __getstate__(self):
        return {"n": self._n, "tails": np.array(self._tails), "heads": np.array(self._heads)}

    def __setstate__(self, state):
        self.__init__(state["n"], np.stack([state["tails"], state["heads"]], axis=1))


def build_digraph(n: int, arcs: Iterable[Sequence[int]] | np.ndarray) -> Digraph:
    return Digraph(n, arcs)


@dataclass(frozen=True)
class UndirectedGraph:
    """Simple undirected graph; ``edges`` holds ``(u, v)`` with ``u < v``, sorted."""

    n: int
    edges: tuple[tuple[int, int], ...]

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by smallest member."""
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp, stack = [s], [s]
            while stack:
                x = stack.pop()
                for y in self.adjacency[x]:
                    if not seen[y]:
                        seen[y] = True
                        comp.append(y)
                        stack.append(y)
            out.append(sorted(comp))
        return out


def _underlying_edge_array(D: Digraph) -> np.ndarray:
    if D.num_arcs == 0:
        return np.empty((0, 2), dtype=np.int64)
    lo = np.minimum(D.tails, D.heads)
    hi = np.maximum(D.tails, D.heads)
    keys = np.unique(lo * D.n + hi)
    return np.stack([keys // D.n, keys % D.n], axis=1) if D.n else keys.reshape(0, 2)


def underlying_graph(D: Digraph) -> UndirectedGraph:
    e = _underlying_edge_array(D)
    return UndirectedGraph(D.n, tuple(map(tuple, e.tolist())))


def underlying_degree(D: Digraph) -> np.ndarray:
    """Degree of every vertex in the underlying simple graph."""
    # a 2-cycle contributes two arcs but one edge at each endpoint
    return D.out_degree + D.in_degree - D.two_cycle_degree


def underlying_edge_count(D: Digraph) -> int:
    return D.num_arcs - int(D.two_cycle_degree.sum()) // 2


def underlying_components(D: Digraph) -> tuple[int, np.ndarray]:
    """Connected components of the underlying graph as ``(count, labels)``."""
    count, labels = connected_components(D.csr, directed=True, connection="weak")
    return int(count), _canonical_labels(labels, count)


def is_tree(D: Digraph) -> bool:
    """True iff the underlying simple graph is a tree (connected, acyclic)."""
    if D.n == 0 or underlying_edge_count(D) != D.n - 1:
        return False
    return connected_components(D.csr, directed=True, connection="weak", return_labels=False) == 1


@dataclass(frozen=True)
class VertexClassification:
    """Per-vertex boolean flags, indexed by vertex id."""

    is_source: np.ndarray
    is_sink: np.ndarray
    is_transitive: np.ndarray
    is_leaf: np.ndarray
    has_2cycle_incident: np.ndarray

    @property
    def is_extremal(self) -> np.ndarray:
        return self.is_source | self.is_sink

    def sources(self) -> list[int]:
        return np.flatnonzero(self.is_source).tolist()

    def sinks(self) -> list[int]:
        return np.flatnonzero(self.is_sink).tolist()

    def extremal(self) -> list[int]:
        return np.flatnonzero(self.is_extremal).tolist()

    def leaves(self) -> list[int]:
        return np.flatnonzero(self.is_leaf).tolist()

    def transitive(self) -> list[int]:
        return np.flatnonzero(self.is_transitive).tolist()


def _leaf_mask(D: Digraph) -> np.ndarray:
    return underlying_degree(D) == 1


def _transitive_mask(D: Digraph, is_source: np.ndarray, is_sink: np.ndarray) -> np.ndarray:
    # Vacuously transitive when either neighbourhood is empty.
    out = is_source | is_sink
    arcs = D.arc_set
    for v in np.flatnonzero(~out).tolist():
        out[v] = all(
            u1 == u2 or (u1, u2) in arcs for u1 in D.in_adj[v] for u2 in D.out_adj[v]
        )
    return out


def classify_vertices(D: Digraph) -> VertexClassification:
    is_source = D.in_degree == 0
    is_sink = D.out_degree == 0
    two = np.zeros(D.n, dtype=bool)
    two[D.tails[D.two_cycle_mask]] = True
    return VertexClassification(
        is_source=is_source,
        is_sink=is_sink,
        is_transitive=_transitive_mask(D, is_source, is_sink),
        is_leaf=_leaf_mask(D),
        has_2cycle_incident=two,
    )


def extremal_vertices(D: Digraph) -> list[int]:
    """Ext(D): every vertex with no in-arc or no out-arc, ascending."""
    return np.flatnonzero((D.in_degree == 0) | (D.out_degree == 0)).tolist()


def first_members(labels: np.ndarray, count: int) -> np.ndarray:
    """Smallest vertex carrying each label, in linear time."""
    first = np.empty(count, dtype=np.int64)
    # with repeated indices the last assignment wins, so write in reverse
    first[labels[::-1]] = np.arange(len(labels) - 1, -1, -1)
    return first


def _canonical_labels(labels: np.ndarray, count: int) -> np.ndarray:
    # Renumber so components are ordered by their smallest vertex.
    first = first_members(labels, count)
    mark = np.zeros(len(labels), dtype=np.int64)
    mark[first] = 1
    return (np.cumsum(mark) - 1)[first][labels]


@dataclass(frozen=True)
class SccPartition:
    """Strongly connected components ordered by smallest member.

    ``labels[v]`` is the component id of ``v``; the three flag arrays are
    indexed by component id.
    """

    labels: np.ndarray
    is_source_set: np.ndarray
    is_sink_set: np.ndarray
    contains_leaf: np.ndarray

    @property
    def count(self) -> int:
        return len(self.is_source_set)

    @cached_property
    def members(self) -> tuple[tuple[int, ...], ...]:
        order = np.argsort(self.labels, kind="stable")
        bounds = np.cumsum(np.bincount(self.labels, minlength=self.count))[:-1]
        return tuple(tuple(part.tolist()) for part in np.split(order, bounds))

    def component_of(self, v: int) -> int:
        return int(self.labels[v])


def strongly_connected_components(D: Digraph) -> SccPartition:
    """Maximal SCCs with source-set / sink-set / contains-leaf flags.

    Runs in O(n + |arcs|).
    """
    count, raw = connected_components(D.csr, directed=True, connection="strong")
    labels = _canonical_labels(raw, count) if D.n else raw.astype(np.int64)
    lt, lh = labels[D.tails], labels[D.heads]
    ext = lt != lh
    entered = np.zeros(count, dtype=bool)
    entered[lh[ext]] = True
    left = np.zeros(count, dtype=bool)
    left[lt[ext]] = True
    leafy = np.zeros(count, dtype=bool)
    leafy[labels[_leaf_mask(D)]] = True
    return SccPartition(labels=labels, is_source_set=~entered, is_sink_set=~left, contains_leaf=leafy)
