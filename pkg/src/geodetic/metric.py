"""Hop distances, shortest-path intervals and geodetic closure.

Conventions: ``I(u, u) = {u}``, so every set is contained in its own closure
and ``V(D)`` is always geodetic; an ordered pair with no directed path
contributes nothing.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Literal

import numpy as np

from .digraph import Digraph
from .errors import IndexOutOfRange

Direction = Literal["forward", "backward"]


@dataclass(frozen=True)
class DistanceField:
    """Hop distances from ``origin`` (forward) or to ``origin`` (backward).

    ``distances[v]`` is ``None`` when ``v`` is unreachable.
    """

    origin: int
    direction: Direction
    distances: tuple[int | None, ...]

    def __getitem__(self, v: int) -> int | None:
        return self.distances[v]

    def reachable(self, v: int) -> bool:
        return self.distances[v] is not None


def _bfs(adj: tuple[tuple[int, ...], ...], origin: int) -> list[int]:
    dist = [-1] * len(adj)
    dist[origin] = 0
    queue = deque([origin])
    while queue:
        x = queue.popleft()
        dx = dist[x] + 1
        for y in adj[x]:
            if dist[y] < 0:
                dist[y] = dx
                queue.append(y)
    return dist


def _check(D: Digraph, *vs: int) -> None:
    for v in vs:
        if not 0 <= v < D.n:
            raise IndexOutOfRange(v, D.n)


def bfs_distances(D: Digraph, origin: int, direction: Direction = "forward") -> DistanceField:
    _check(D, origin)
    if direction not in ("forward", "backward"):
        raise ValueError(f"unknown direction {direction!r}")
    adj = D.out_adj if direction == "forward" else D.in_adj
    raw = _bfs(adj, origin)
    return DistanceField(origin, direction, tuple(d if d >= 0 else None for d in raw))


def interval(D: Digraph, u: int, v: int) -> frozenset[int]:
    """All vertices on some shortest directed path from ``u`` to ``v``."""
    _check(D, u, v)
    if u == v:
        return frozenset((u,))
    fwd = _bfs(D.out_adj, u)
    if fwd[v] < 0:
        return frozenset()
    bwd = _bfs(D.in_adj, v)
    total = fwd[v]
    return frozenset(w for w in range(D.n) if fwd[w] >= 0 and bwd[w] >= 0 and fwd[w] + bwd[w] == total)


class ClosureEngine:
    """Read-through cache of BFS distance rows plus bitset interval queries.

    Vertex sets are Python ints used as bitsets (bit ``v`` set iff ``v`` is a
    member). Distance rows live in int32 arrays with ``UNREACHABLE`` as the
    marker; the marker is small enough that the sum of two rows never
    overflows and always exceeds any true distance.
    """

    def __init__(self, D: Digraph):
        self.D = D
        self.unreachable = D.n + 1
        self.full = (1 << D.n) - 1
        self._fwd: dict[int, np.ndarray] = {}
        self._bwd: dict[int, np.ndarray] = {}
        self.evaluations = 0

    def _row(self, cache: dict, adj, v: int) -> np.ndarray:
        row = cache.get(v)
        if row is None:
            row = np.asarray(_bfs(adj, v), dtype=np.int32)
            row[row < 0] = self.unreachable
            row.flags.writeable = False
            cache[v] = row
        return row

    def forward(self, u: int) -> np.ndarray:
        return self._row(self._fwd, self.D.out_adj, u)

    def backward(self, v: int) -> np.ndarray:
        return self._row(self._bwd, self.D.in_adj, v)

    @staticmethod
    def to_bits(mask: np.ndarray) -> int:
        return int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")

    @staticmethod
    def from_bits(bits: int) -> list[int]:
        out = []
        while bits:
            low = bits & -bits
            out.append(low.bit_length() - 1)
            bits ^= low
        return out

    def interval_mask(self, u: int, v: int) -> np.ndarray:
        f = self.forward(u)
        d = int(f[v])
        if d >= self.unreachable:
            return np.zeros(self.D.n, dtype=bool)
        return (f + self.backward(v)) == d

    def interval_bits(self, u: int, v: int) -> int:
        return self.to_bits(self.interval_mask(u, v))

    def pair_bits(self, u: int, v: int) -> int:
        """``I(u, v) | I(v, u)``."""
        return self.to_bits(self.interval_mask(u, v) | self.interval_mask(v, u))

    def closure_mask(self, S: Iterable[int]) -> np.ndarray:
        S = sorted(set(S))
        self.evaluations += 1
        covered = np.zeros(self.D.n, dtype=bool)
        if not S:
            return covered
        F = np.stack([self.forward(s) for s in S])
        B = np.stack([self.backward(s) for s in S])
        idx = np.asarray(S)
        for i in range(len(S)):
            d = F[i, idx]
            ok = d < self.unreachable
            if ok.any():
                hit = (F[i][None, :] + B[ok]) == d[ok][:, None]
                covered |= hit.any(axis=0)
        return covered

    def closure_bits(self, S: Iterable[int]) -> int:
        return self.to_bits(self.closure_mask(S))

    def coverage_with(self, x: int, anchors: Iterable[int]) -> int:
        """Bits of ``{x}`` plus ``I(x, s) | I(s, x)`` over every anchor ``s``."""
        anchors = list(anchors)
        mask = np.zeros(self.D.n, dtype=bool)
        mask[x] = True
        if anchors:
            fx, bx = self.forward(x), self.backward(x)
            idx = np.asarray(anchors)
            B = np.stack([self.backward(s) for s in anchors])
            F = np.stack([self.forward(s) for s in anchors])
            d_out = fx[idx]
            ok = d_out < self.unreachable
            if ok.any():
                mask |= ((fx[None, :] + B[ok]) == d_out[ok][:, None]).any(axis=0)
            d_in = bx[idx]
            ok = d_in < self.unreachable
            if ok.any():
                mask |= ((F[ok] + bx[None, :]) == d_in[ok][:, None]).any(axis=0)
        return self.to_bits(mask)


def closure(D: Digraph, S: Iterable[int]) -> frozenset[int]:
    """Geodetic closure: union of ``I(u, v)`` over ordered pairs from ``S``."""
    S = list(S)
    _check(D, *S)
    mask = ClosureEngine(D).closure_mask(S)
    return frozenset(np.flatnonzero(mask).tolist())


def is_geodetic(D: Digraph, S: Iterable[int]) -> bool:
    S = list(S)
    _check(D, *S)
    return bool(ClosureEngine(D).closure_mask(S).all())
