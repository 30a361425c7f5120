from __future__ import annotations

from hypothesis import strategies as st

from geodetic.digraph import Digraph


@st.composite
def digraphs(draw, max_n=9, max_arcs_per_vertex=3):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    if not pairs:
        return Digraph(n, [])
    arcs = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=max_arcs_per_vertex * n))
    return Digraph(n, arcs)


@st.composite
def oriented_graphs(draw, max_n=9):
    D = draw(digraphs(max_n))
    keep, seen = [], set()
    for u, v in D.arcs:
        if (v, u) not in seen:
            seen.add((u, v))
            keep.append((u, v))
    return Digraph(D.n, keep)
