from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geodetic.digraph import Digraph, classify_vertices, extremal_vertices, is_tree
from geodetic.ditree import contract_ditree, leafless_extreme_sets, solve_ditree
from geodetic.errors import NotATree
from geodetic.exact import solve_exact
from geodetic.generators import gen_ditree, gen_oriented_fen, gen_oriented_tree

from conftest import theta
from strategies import digraphs


def reference_witness(T: Digraph) -> tuple[int, ...]:
    """Leaves plus the smallest member of each leafless source or sink set (scipy path)."""
    scc, chosen = leafless_extreme_sets(T)
    take = set(classify_vertices(T).leaves())
    take |= {min(scc.members[c]) for c in chosen}
    return tuple(sorted(take))


def test_ditree13(ditree13):
    r = solve_ditree(ditree13)
    assert r.witness == (4, 9, 10, 11, 12) and r.verified
    assert r.stats["leafless_sets"] == 0


def test_small_examples(p3):
    assert solve_ditree(p3).witness == (0, 2)
    assert solve_ditree(Digraph(2, [(0, 1), (1, 0)])).witness == (0, 1)
    assert solve_ditree(Digraph(1, [])).witness == (0,)


def test_leafless_sink_set_gets_min_member():
    # 0 -> 1 <-> 2 <- 3: {1,2} is a sink set without a leaf
    T = Digraph(4, [(0, 1), (1, 2), (2, 1), (3, 2)])
    r = solve_ditree(T)
    assert r.witness == (0, 1, 3)
    assert r.size == solve_exact(T).size


def test_leafless_source_set_gets_min_member():
    # star centre pair 1 <-> 2 with out-arcs only: {1,2} is a leafless source set
    T = Digraph(6, [(1, 2), (2, 1), (1, 0), (1, 3), (2, 4), (2, 5)])
    r = solve_ditree(T)
    assert r.witness == (0, 1, 3, 4, 5)
    assert r.size == solve_exact(T).size
    assert r.stats["leafless_sets"] == 1


def test_not_a_tree():
    with pytest.raises(NotATree):
        solve_ditree(theta())
    with pytest.raises(NotATree):
        solve_ditree(Digraph(4, [(0, 1), (2, 3)]))
    with pytest.raises(NotATree):
        solve_ditree(Digraph(0, []))


def test_verify_flag(ditree13):
    assert solve_ditree(ditree13, verify=False).verified is False


def test_contract_ditree13(ditree13):
    c = contract_ditree(ditree13)
    assert c.contracted.n == 7
    vm = c.vertex_map
    # v1..v4, v6, v8 collapse into one vertex; v7, v9 into another
    assert len({vm[v] for v in (0, 1, 2, 3, 5, 7)}) == 1
    assert vm[6] == vm[8]
    leaves = {vm[v] for v in (4, 9, 10, 11, 12)}
    assert len(leaves) == 5
    assert is_tree(c.contracted)
    assert contract_ditree(ditree13, seed=5) == c


def test_contract_unchanged(p3):
    assert contract_ditree(p3).contracted == p3
    two = Digraph(2, [(0, 1), (1, 0)])
    assert contract_ditree(two).contracted == two


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 14), st.sampled_from([0.0, 0.3, 0.5, 1.0]), st.integers(0, 2**32))
def test_matches_reference_and_exact(n, p2, seed):
    T = gen_ditree(n, p2, seed)
    r = solve_ditree(T)
    assert r.witness == reference_witness(T)
    assert r.size == solve_exact(T).size
    assert r.verified


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 60), st.integers(0, 2**32))
def test_oriented_tree_is_ext(n, seed):
    T = gen_oriented_tree(n, seed)
    if n == 1:
        assert solve_ditree(T).witness == (0,)
    else:
        assert list(solve_ditree(T).witness) == extremal_vertices(T)


@settings(max_examples=300, deadline=None)
@given(digraphs(max_n=10))
def test_kernel_tree_test_matches_is_tree(D):
    if is_tree(D):
        assert solve_ditree(D).verified
    else:
        with pytest.raises(NotATree):
            solve_ditree(D)


@settings(max_examples=100, deadline=None)
@given(st.integers(4, 30), st.integers(1, 3), st.integers(0, 2**32))
def test_rejects_graphs_with_cycles(n, fen, seed):
    with pytest.raises(NotATree):
        solve_ditree(gen_oriented_fen(n, fen, seed))


def test_large_ditree_linear_shapes():
    T = gen_ditree(20000, 0.3, 11)
    r = solve_ditree(T, verify=False)
    assert r.witness == reference_witness(T)
    assert np.all(np.diff(r.witness) > 0)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 25), st.sampled_from([0.3, 0.6, 1.0]), st.integers(0, 2**32), st.integers(0, 2**16))
def test_contraction_order_independent(n, p2, seed, order):
    T = gen_ditree(n, p2, seed)
    assert contract_ditree(T, seed=order) == contract_ditree(T)
