from __future__ import annotations

import pickle

import numpy as np
import pytest
from hypothesis import given, settings

from geodetic.digraph import (
    Digraph,
    classify_vertices,
    extremal_vertices,
    is_tree,
    strongly_connected_components,
    underlying_components,
    underlying_degree,
    underlying_graph,
)
from geodetic.errors import DuplicateArc, IndexOutOfRange, SelfLoop

from strategies import digraphs


def test_construct_p3(p3):
    assert p3.n == 3 and p3.arcs == ((0, 1), (1, 2))
    assert p3.out_adj == ((1,), (2,), ())
    assert p3.in_adj == ((), (0,), (1,))


def test_two_cycle_digraph():
    D = Digraph(2, [(0, 1), (1, 0)])
    assert D.two_cycles() == [(0, 1)]
    assert not D.is_oriented()


def test_self_loop_rejected():
    with pytest.raises(SelfLoop) as e:
        Digraph(3, [(0, 0)])
    assert e.value.u == 0


def test_duplicate_and_range_rejected():
    with pytest.raises(DuplicateArc):
        Digraph(3, [(0, 1), (1, 2), (0, 1)])
    with pytest.raises(IndexOutOfRange):
        Digraph(3, [(0, 3)])
    with pytest.raises(IndexOutOfRange):
        Digraph(2, [(-1, 0)])


def test_first_violation_reported():
    with pytest.raises(DuplicateArc) as e:
        Digraph(4, [(2, 3), (0, 1), (2, 3), (0, 1)])
    assert (e.value.u, e.value.v) == (2, 3)


def test_classify_p3(p3):
    c = classify_vertices(p3)
    assert c.sources() == [0] and c.sinks() == [2]
    assert c.leaves() == [0, 2]
    assert not c.is_extremal[1]


def test_classify_two_cycle():
    c = classify_vertices(Digraph(2, [(0, 1), (1, 0)]))
    assert c.extremal() == []
    assert c.leaves() == [0, 1]
    assert c.transitive() == [0, 1]
    assert c.has_2cycle_incident.all()


def test_ditree13_leaves(ditree13):
    # v5, v10, v11, v12, v13
    assert classify_vertices(ditree13).leaves() == [4, 9, 10, 11, 12]


def test_ditree13_underlying_tree(ditree13):
    G = underlying_graph(ditree13)
    assert len(G.edges) == 12
    assert is_tree(ditree13)


def test_scc_p3(p3):
    scc = strongly_connected_components(p3)
    assert scc.count == 3
    assert scc.is_source_set.tolist() == [True, False, False]
    assert scc.is_sink_set.tolist() == [False, False, True]


def test_scc_two_cycle():
    scc = strongly_connected_components(Digraph(2, [(0, 1), (1, 0)]))
    assert scc.count == 1
    assert scc.is_source_set[0] and scc.is_sink_set[0] and scc.contains_leaf[0]


def test_ditree13_gray_sink_set(ditree13):
    scc = strongly_connected_components(ditree13)
    gray = scc.component_of(0)
    assert scc.members[gray] == (0, 1, 2, 3, 5, 7, 9)
    assert scc.is_sink_set[gray] and not scc.is_source_set[gray]
    src = scc.component_of(6)
    assert scc.members[src] == (6, 8, 12) and scc.is_source_set[src]


def test_induced_relabels():
    D = Digraph(5, [(0, 1), (1, 2), (3, 4), (4, 0)])
    sub, ids = D.induced([4, 0, 1])
    assert ids == (0, 1, 4)
    assert sorted(sub.arcs) == [(0, 1), (2, 0)]


def test_pickle_roundtrip(ditree13):
    assert pickle.loads(pickle.dumps(ditree13)) == ditree13


def test_empty_digraph():
    D = Digraph(0, [])
    assert D.n == 0 and D.num_arcs == 0
    assert not is_tree(D)


@settings(max_examples=200, deadline=None)
@given(digraphs())
def test_classification_deterministic(D):
    a, b = classify_vertices(D), classify_vertices(D)
    for f in ("is_source", "is_sink", "is_transitive", "is_leaf", "has_2cycle_incident"):
        assert np.array_equal(getattr(a, f), getattr(b, f))


@settings(max_examples=200, deadline=None)
@given(digraphs())
def test_extremal_matches_definition(D):
    expected = [v for v in range(D.n) if not D.in_adj[v] or not D.out_adj[v]]
    assert extremal_vertices(D) == expected


@settings(max_examples=200, deadline=None)
@given(digraphs())
def test_underlying_degree_counts_distinct_neighbours(D):
    nbrs = [set(D.in_adj[v]) | set(D.out_adj[v]) for v in range(D.n)]
    assert underlying_degree(D).tolist() == [len(s) for s in nbrs]


@settings(max_examples=200, deadline=None)
@given(digraphs())
def test_scc_matches_mutual_reachability(D):
    reach = [[False] * D.n for _ in range(D.n)]
    for s in range(D.n):
        stack, seen = [s], {s}
        while stack:
            x = stack.pop()
            for y in D.out_adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        for t in seen:
            reach[s][t] = True
    scc = strongly_connected_components(D)
    for u in range(D.n):
        for v in range(D.n):
            same = scc.component_of(u) == scc.component_of(v)
            assert same == (reach[u][v] and reach[v][u])


@settings(max_examples=100, deadline=None)
@given(digraphs())
def test_components_ordered_by_min_vertex(D):
    count, labels = underlying_components(D)
    firsts = [int(np.flatnonzero(labels == c)[0]) for c in range(count)]
    assert firsts == sorted(firsts)
