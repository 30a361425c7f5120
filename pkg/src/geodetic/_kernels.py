"""Compiled kernel behind :func:`geodetic.ditree.solve_ditree`.

With uniformly random vertex labels every pass over a million-vertex tree
is a stream of cache misses, so the kernel keeps passes few and their
iterations independent (which lets the memory system overlap misses). An
open-addressing table finds the 2-cycles; union-find gives weak
connectivity and the 2-cycle components, which are exactly the SCCs of a
ditree. Expected time O(n + |arcs|).
"""

from __future__ import annotations

import numpy as np
from numba import njit

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)


@njit(cache=True)
def _slot(key, shift):
    return np.int64((np.uint64(key) * _GOLDEN) >> np.uint64(shift))


@njit(cache=True)
def _find(parent, x):
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


@njit(cache=True)
def ditree_kernel(n, tails, heads):
    """Return ``(is_tree, take, leafless_sets)``; ``take`` marks the witness.

    Union-find splits the arcs into spanning-forest arcs and closing arcs.
    The input is a ditree exactly when the forest is spanning and every
    closing arc is the reverse of a forest arc; only the closing arcs go
    into the hash table, which keeps it small.
    """
    m = len(tails)
    take = np.zeros(n, dtype=np.bool_)
    # a ditree has n - 1 edges, each carrying one or two arcs
    if n == 0 or m < n - 1 or m > 2 * (n - 1):
        return False, take, 0

    weak = np.arange(n, dtype=np.int32)
    deg = np.zeros(n, dtype=np.int32)
    forest = np.zeros(m, dtype=np.bool_)
    n_forest = 0
    for i in range(m):
        t, h = tails[i], heads[i]
        rt, rh = _find(weak, t), _find(weak, h)
        if rt != rh:
            weak[rt] = rh
            forest[i] = True
            n_forest += 1
            deg[t] += 1
            deg[h] += 1
    if n_forest != n - 1:
        return False, take, 0

    n_closing = m - n_forest
    bits = 1
    while (1 << bits) < 2 * n_closing:
        bits += 1
    size = 1 << bits
    mask = size - 1
    shift = 64 - bits
    table = np.full(size, -1, dtype=np.int64)
    for i in range(m):
        if not forest[i]:
            key = heads[i] * n + tails[i]
            s = _slot(key, shift)
            while table[s] != -1:
                s = (s + 1) & mask
            table[s] = key

    single = forest.copy()
    scc = np.arange(n, dtype=np.int32)
    matched = 0
    if n_closing:
        for i in range(m):
            if forest[i]:
                t, h = tails[i], heads[i]
                key = t * n + h
                s = _slot(key, shift)
                while table[s] != -1:
                    if table[s] == key:
                        single[i] = False
                        matched += 1
                        st, sh = _find(scc, t), _find(scc, h)
                        # keep the smaller root so each root is the minimum of its class
                        if st < sh:
                            scc[sh] = st
                        else:
                            scc[st] = sh
                        break
                    s = (s + 1) & mask
    if matched != n_closing:
        return False, take, 0

    for v in range(n):
        scc[v] = _find(scc, v)
    # per class bits: 1 = an arc leaves it, 2 = an arc enters it, 4 = holds a leaf
    flags = np.zeros(n, dtype=np.uint8)
    for i in range(m):
        if single[i]:
            flags[scc[tails[i]]] |= 1
            flags[scc[heads[i]]] |= 2
    for v in range(n):
        if deg[v] == 1:
            take[v] = True
            flags[scc[v]] |= 4
    chosen = 0
    for v in range(n):
        # a source or sink class without a leaf
        if scc[v] == v and flags[v] & 4 == 0 and flags[v] & 3 != 3:
            take[v] = True
            chosen += 1
    return True, take, chosen
