import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import hypergraphs, random_hypergraph
from coturan.hypercore import Hypergraph, HypergraphError, fano_plane, induced
from coturan.indep import (
    BOUNDED,
    EXACT,
    INCONCLUSIVE,
    LOWER_BOUND,
    alpha_below,
    alpha_exact,
    alpha_exhaustive,
    alpha_greedy,
    is_independent,
    twin_classes,
)


def test_fano_alpha_is_four():
    F = fano_plane()
    for res in (alpha_exact(F), alpha_exhaustive(F)):
        assert res.alpha == 4 and res.status == EXACT
        assert is_independent(F, res.witness)


@pytest.mark.parametrize("t, r", [(5, 3), (7, 3), (6, 4), (8, 5)])
def test_complete_graph_alpha_is_r_minus_one(t, r):
    assert alpha_exact(Hypergraph.complete(t, r)).alpha == r - 1


def test_edgeless_alpha_is_n():
    res = alpha_exact(Hypergraph.empty(9, 3))
    assert res.alpha == 9 and res.witness == tuple(range(9))


def test_zero_vertices():
    assert alpha_exact(Hypergraph.empty(0, 3)).alpha == 0


def test_graph_case_matches_exhaustive():
    # r = 2: ordinary graphs, alpha of the 5-cycle is 2
    C5 = Hypergraph.from_edges(2, 5, [(i, (i + 1) % 5) for i in range(5)])
    assert alpha_exact(C5).alpha == alpha_exhaustive(C5).alpha == 2


def test_exhaustive_refuses_large_n():
    with pytest.raises(HypergraphError):
        alpha_exhaustive(Hypergraph.empty(23, 3))


def test_twin_classes_of_blown_up_edge():
    H = Hypergraph.from_edges(3, 6, [(a, b, c) for a in (0, 1) for b in (2, 3) for c in (4, 5)])
    assert twin_classes(H) == [(0, 1), (2, 3), (4, 5)]


@settings(max_examples=200, deadline=None)
@given(hypergraphs(max_n=11))
def test_exact_matches_exhaustive(H):
    a, b = alpha_exact(H), alpha_exhaustive(H)
    assert a.alpha == b.alpha
    assert is_independent(H, a.witness) and len(a.witness) == a.alpha


@settings(max_examples=100, deadline=None)
@given(hypergraphs(max_n=11), st.integers(0, 10**6))
def test_greedy_is_a_lower_bound(H, seed):
    g = alpha_greedy(H, seed)
    assert g.status == LOWER_BOUND
    assert is_independent(H, g.witness)
    assert g.alpha <= alpha_exact(H).alpha


@settings(max_examples=100, deadline=None)
@given(hypergraphs(max_n=10), st.data())
def test_adding_an_edge_never_raises_alpha(H, data):
    from itertools import combinations

    missing = [e for e in combinations(range(H.n), H.r) if e not in H.edge_set]
    if not missing:
        return
    e = data.draw(st.sampled_from(missing))
    G = Hypergraph(H.r, H.n, H.edges + (e,))
    assert alpha_exact(G).alpha <= alpha_exact(H).alpha


@settings(max_examples=100, deadline=None)
@given(hypergraphs(max_n=10), st.data())
def test_deleting_a_vertex_drops_alpha_by_at_most_one(H, data):
    v = data.draw(st.integers(0, H.n - 1))
    rest = [u for u in range(H.n) if u != v]
    a_full, a_rest = alpha_exact(H).alpha, alpha_exact(induced(H, rest)).alpha
    assert a_rest <= a_full <= a_rest + 1


def test_budget_exhaustion_is_inconclusive():
    H = random_hypergraph(random.Random(5), 30, 3, 0.08)
    res = alpha_exact(H, budget=3)
    assert res.status == INCONCLUSIVE
    assert res.upper is None
    assert is_independent(H, res.witness)


def test_alpha_below_decides_both_ways():
    F = fano_plane()
    assert alpha_below(F, 5).upper == 4  # alpha = 4 < 5
    found = alpha_below(F, 4)
    assert found.status == LOWER_BOUND and found.alpha >= 4
    assert is_independent(F, found.witness)


@settings(max_examples=150, deadline=None)
@given(hypergraphs(max_n=10), st.integers(1, 11))
def test_alpha_below_agrees_with_exact(H, t):
    alpha = alpha_exact(H).alpha
    res = alpha_below(H, t)
    if alpha >= t:
        assert res.status == LOWER_BOUND and res.alpha >= t
    else:
        assert res.status in (EXACT, BOUNDED) and res.upper == t - 1
        assert res.alpha <= alpha
    assert is_independent(H, res.witness)


def test_solver_is_deterministic():
    H = random_hypergraph(random.Random(9), 24, 3, 0.1)
    assert alpha_exact(H) == alpha_exact(H)
