"""Shared fixtures and brute-force oracles.

The oracles here deliberately share no code with the package: distances
come from Floyd-Warshall on a plain adjacency matrix and intervals are
recomputed from the definition.
"""

from __future__ import annotations

from itertools import combinations

import pytest

from geodetic.digraph import Digraph

INF = float("inf")

_ACCEPTANCE: list[str] = []


def record_acceptance(line: str) -> None:
    _ACCEPTANCE.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)


def fw_distances(n: int, arcs) -> list[list[float]]:
    d = [[0 if i == j else INF for j in range(n)] for i in range(n)]
    for u, v in arcs:
        d[u][v] = 1
    for k in range(n):
        for i in range(n):
            if d[i][k] == INF:
                continue
            for j in range(n):
                if d[i][k] + d[k][j] < d[i][j]:
                    d[i][j] = d[i][k] + d[k][j]
    return d


def brute_interval(d, u: int, v: int) -> set[int]:
    n = len(d)
    if d[u][v] == INF:
        return set()
    return {w for w in range(n) if d[u][w] + d[w][v] == d[u][v]}


def brute_closure(n: int, arcs, S) -> set[int]:
    d = fw_distances(n, arcs)
    out = set(S)
    for u in S:
        for v in S:
            out |= brute_interval(d, u, v)
    return out


def brute_geodetic_number(n: int, arcs) -> int:
    """Smallest k such that some k-subset is geodetic (n up to about 12)."""
    d = fw_distances(n, arcs)
    iv = [[0] * n for _ in range(n)]
    for u in range(n):
        for v in range(n):
            iv[u][v] = sum(1 << w for w in brute_interval(d, u, v)) | (1 << u)
    full = (1 << n) - 1
    for k in range(1, n + 1):
        for S in combinations(range(n), k):
            acc = 0
            for u in S:
                for v in S:
                    acc |= iv[u][v]
            if acc == full:
                return k
    return n


# 13-vertex ditree, vertices v1..v13 renumbered 0..12; a sink set and a
# source set each holding a leaf, so the leaves alone are a minimum witness.
DITREE13_TWO_CYCLES = [(1, 2), (2, 3), (3, 4), (3, 6), (6, 8), (7, 9), (8, 10), (9, 13)]
DITREE13_SINGLE = [(5, 4), (7, 3), (11, 1), (12, 1)]


def ditree13_arcs() -> list[tuple[int, int]]:
    arcs = []
    for u, v in DITREE13_TWO_CYCLES:
        arcs += [(u - 1, v - 1), (v - 1, u - 1)]
    arcs += [(u - 1, v - 1) for u, v in DITREE13_SINGLE]
    return arcs


@pytest.fixture
def ditree13() -> Digraph:
    return Digraph(13, ditree13_arcs())


@pytest.fixture
def p3() -> Digraph:
    return Digraph(3, [(0, 1), (1, 2)])


def theta(lengths=(2, 3, 4)) -> Digraph:
    """Vertices 0 (a) and 1 (b) joined by directed paths a -> ... -> b."""
    arcs, nxt = [], 2
    for length in lengths:
        prev = 0
        for _ in range(length - 1):
            arcs.append((prev, nxt))
            prev = nxt
            nxt += 1
        arcs.append((prev, 1))
    return Digraph(nxt, arcs)


@pytest.fixture
def theta_graph() -> Digraph:
    return theta()
