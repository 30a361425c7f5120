"""Brute-force minimum geodetic set: the oracle every other solver is checked against."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from itertools import combinations
from math import comb
from typing import Iterable

import numpy as np

from .digraph import Digraph, classify_vertices
from .metric import ClosureEngine, is_geodetic
from .results import CapExceeded, SolveResult


def mandatory_set(D: Digraph) -> frozenset[int]:
    """Sources, sinks and transitive vertices; each lies in every geodetic set."""
    c = classify_vertices(D)
    return frozenset(np.flatnonzero(c.is_extremal | c.is_transitive).tolist())


class SupersetSearch:
    """Finds the first geodetic ``forced | X`` with ``X`` drawn from ``pool``.

    ``X`` is enumerated by increasing size and, within a size, in
    lexicographic order of the sorted tuple, so the hit is deterministic.
    The search for a given size is split into chunks by the first element
    of ``X``; chunks can run in worker processes and are reduced in order.
    """

    def __init__(self, D: Digraph, forced: Iterable[int], pool: Iterable[int]):
        self.D = D
        self.forced = tuple(sorted(set(forced)))
        fs = set(self.forced)
        self.pool = tuple(sorted(set(pool) - fs))
        self.engine = ClosureEngine(D)
        self.full = self.engine.full
        self.base = self.engine.closure_bits(self.forced)
        self._cov: list[int] | None = None
        self._pairs: dict[tuple[int, int], int] = {}

    @property
    def cov(self) -> list[int]:
        if self._cov is None:
            self._cov = [self.engine.coverage_with(x, self.forced) for x in self.pool]
        return self._cov

    def _pair(self, i: int, k: int) -> int:
        key = (i, k)
        bits = self._pairs.get(key)
        if bits is None:
            x, y = self.pool[i], self.pool[k]
            unreachable = self.engine.unreachable
            if self.engine.forward(x)[y] >= unreachable and self.engine.forward(y)[x] >= unreachable:
                bits = 0
            else:
                bits = self.engine.pair_bits(x, y)
            self._pairs[key] = bits
        return bits

    def chunk(self, size: int, first: int) -> tuple[tuple[int, ...] | None, int]:
        """Scan all ``X`` of ``size`` whose smallest pool index is ``first``.

        Returns the first hit (as vertex ids) and the number of subsets examined.
        """
        cov, full = self.cov, self.full
        head = self.base | cov[first]
        examined = 0
        for rest in combinations(range(first + 1, len(self.pool)), size - 1):
            examined += 1
            acc = head
            for i in rest:
                acc |= cov[i]
            if acc != full:
                idx = (first,) + rest
                for a in range(len(idx)):
                    for b in range(a + 1, len(idx)):
                        acc |= self._pair(idx[a], idx[b])
                        if acc == full:
                            break
                    if acc == full:
                        break
            if acc == full:
                return tuple(self.pool[i] for i in (first,) + rest), examined
        return None, examined

    def run(self, max_extra: int | None = None, workers: int = 1) -> tuple[tuple[int, ...] | None, dict]:
        start = time.perf_counter()
        limit = len(self.pool) if max_extra is None else min(max_extra, len(self.pool))
        stats = {"subsets_examined": 0, "closure_evaluations": 1, "pool_size": len(self.pool)}
        hit: tuple[int, ...] | None = None
        if limit >= 0 and self.base == self.full:
            hit = ()
            stats["subsets_examined"] = 1
        else:
            stats["subsets_examined"] = 1
            pool = None
            try:
                for size in range(1, limit + 1):
                    firsts = range(len(self.pool) - size + 1)
                    if workers > 1 and comb(len(self.pool), size) > 64:
                        if pool is None:
                            pool = ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(self,))
                        outcomes = pool.map(_worker_chunk, [(size, f) for f in firsts])
                    else:
                        outcomes = (self.chunk(size, f) for f in firsts)
                    for found, examined in outcomes:
                        stats["subsets_examined"] += examined
                        if found is not None:
                            hit = found
                            break
                    if hit is not None:
                        break
            finally:
                if pool is not None:
                    pool.shutdown(cancel_futures=True)
        stats["closure_evaluations"] = stats["subsets_examined"]
        stats["elapsed"] = time.perf_counter() - start
        if hit is None:
            return None, stats
        return tuple(sorted(self.forced + hit)), stats

    def __getstate__(self):
        state = self.__dict__.copy()
        state["_pairs"] = {}
        return state


_WORKER_SEARCH: SupersetSearch | None = None


def _init_worker(search: SupersetSearch) -> None:
    global _WORKER_SEARCH
    _WORKER_SEARCH = search


def _worker_chunk(args: tuple[int, int]):
    size, first = args
    return _WORKER_SEARCH.chunk(size, first)


def solve_exact(D: Digraph, size_cap: int | None = None, workers: int = 1) -> SolveResult | CapExceeded:
    """Minimum geodetic set by enumeration above the mandatory set.

    With ``size_cap`` the search stops once sets larger than the cap would be
    needed, and a :class:`CapExceeded` outcome is returned instead.
    Practical up to roughly 25 non-mandatory vertices.
    """
    forced = mandatory_set(D)
    search = SupersetSearch(D, forced, range(D.n))
    max_extra = None if size_cap is None else size_cap - len(search.forced)
    if max_extra is not None and max_extra < 0:
        return CapExceeded(size_cap, {"subsets_examined": 0, "closure_evaluations": 0})
    witness, stats = search.run(max_extra, workers=workers)
    stats["mandatory"] = len(search.forced)
    if witness is None:
        return CapExceeded(size_cap, stats)
    return SolveResult(witness, "exact", is_geodetic(D, witness), stats)
