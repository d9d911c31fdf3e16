import random
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from conftest import graphs
from oracles import alpha_of, hall_ratio_by_subsets, to_nx, w_values
from flexcolor.graph import complete_graph, cone, cycle_graph, join, path_graph
from flexcolor.invariants import (
    WProfile,
    chromatic_number,
    clique_number,
    hall_ratio,
    independence_number,
    invariants_report,
    join_w_profile,
    max_degree,
    tau,
    w_profile,
)
from flexcolor.io import all_graphs


@pytest.mark.parametrize("n", range(1, 7))
def test_complete_graph_invariants(n):
    K = complete_graph(n)
    assert independence_number(K) == 1
    assert clique_number(K) == n
    assert chromatic_number(K) == n
    assert max_degree(K) == n - 1
    assert hall_ratio(K) == n
    assert tau(K) == 1


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_odd_cycles(k):
    C = cycle_graph(2 * k + 1)
    assert independence_number(C) == k
    assert hall_ratio(C) == Fraction(2 * k + 1, k)
    if k >= 2:
        assert clique_number(C) == 2
        assert chromatic_number(C) == 3
    assert max_degree(C) == 2


def test_small_examples():
    assert independence_number(cycle_graph(4)) == 2
    assert max_degree(cone(cycle_graph(5))) == 5
    assert hall_ratio(cone(cycle_graph(5))) == 3
    assert w_profile(cycle_graph(5)) == WProfile(2, (2, 5))
    # C_5: a_1 = 2, a_2 = 5, d_2 = ceil((5 - 4) / 1) = 1
    assert tau(cycle_graph(5)) == 1


@given(graphs(max_n=7))
def test_alpha_omega_chi_against_networkx(G):
    H = to_nx(G)
    omega = max(len(c) for c in nx.find_cliques(H))
    alpha = max(len(c) for c in nx.find_cliques(nx.complement(H)))
    assert clique_number(G) == omega
    assert independence_number(G) == alpha
    chi = chromatic_number(G)
    assert omega <= chi <= max_degree(G) + 1


@given(graphs(max_n=3), graphs(max_n=4), st.integers(1, 3))
def test_join_additivity(H, G, p):
    K = complete_graph(p)
    assert clique_number(join(K, G)) == p + clique_number(G)
    assert chromatic_number(join(K, G)) == p + chromatic_number(G)
    assert chromatic_number(join(H, G)) == chromatic_number(H) + chromatic_number(G)


@given(graphs(max_n=6))
def test_w_profile_against_subset_scan(G):
    wp = w_profile(G)
    ref = w_values(G)
    assert wp.alpha == max(ref)
    assert {a: wp[a] for a in range(1, wp.alpha + 1)} == ref
    # profile properties: endpoints and monotonicity
    assert wp[1] == clique_number(G)
    assert wp[wp.alpha] == G.n
    assert list(wp.values) == sorted(wp.values)


@given(graphs(max_n=6))
def test_w_profile_at_most_definition_agrees(G):
    # max |S| with alpha(G[S]) <= a equals max |S| with alpha(G[S]) == a
    wp = w_profile(G)
    ref = w_values(G)
    for a in range(1, wp.alpha + 1):
        assert wp[a] == max(v for b, v in ref.items() if b <= a)


@given(graphs(max_n=6))
def test_hall_ratio_two_formulas_agree(G):
    rho = hall_ratio(G)
    assert rho == hall_ratio_by_subsets(G)
    assert clique_number(G) <= rho
    assert rho >= Fraction(G.n, independence_number(G))


@pytest.mark.parametrize("G", [cycle_graph(n) for n in range(3, 9)] + [complete_graph(n) for n in range(1, 6)])
def test_vertex_transitive_hall_ratio(G):
    assert hall_ratio(G) == Fraction(G.n, independence_number(G))


def test_join_w_profile_with_k1_adds_one():
    for G in all_graphs(5):
        wG = w_profile(G)
        got = join_w_profile(w_profile(complete_graph(1)), wG, 1)
        assert got.values == tuple(1 + x for x in wG.values)


@pytest.mark.parametrize("N", [1, 2, 3])
def test_join_w_profile_clique_and_c5(N):
    C5 = cycle_graph(5)
    got = join_w_profile(w_profile(complete_graph(N)), w_profile(C5), N)
    assert got == w_profile(join(complete_graph(N), C5))
    assert got.values == (N + 2, N + 5)


def test_join_w_profile_hypothesis_violation():
    with pytest.raises(ValueError):
        join_w_profile(w_profile(cycle_graph(5)), w_profile(complete_graph(2)), 5)


@given(graphs(max_n=5), graphs(max_n=5))
def test_join_w_profile_matches_direct(A, B):
    H, G = (A, B) if independence_number(A) <= independence_number(B) else (B, A)
    assert join_w_profile(w_profile(H), w_profile(G), H.n) == w_profile(join(H, G))


def test_tau_definition_on_all_small_graphs():
    for G in all_graphs(6):
        wp = w_values(G) if G.n <= 5 else {a: w_profile(G)[a] for a in range(1, w_profile(G).alpha + 1)}
        alpha = max(wp)
        expected = 1 if alpha == 1 else max([1] + [-(-(wp[j] - j * wp[1]) // (j - 1)) for j in range(2, alpha + 1)])
        assert tau(G) == expected


@given(graphs(max_n=6), st.integers(0, 3))
@settings(max_examples=60)
def test_tau_makes_hall_ratio_equal_clique_number(G, extra):
    N = tau(G) + extra
    M = join(complete_graph(N), G)
    assert hall_ratio(M) == clique_number(M) == N + clique_number(G)


def test_invariants_report_shape():
    rep = invariants_report(cycle_graph(5))
    assert rep["hall_ratio"] == {"num": 5, "den": 2}
    assert rep["w_profile"] == {"1": 2, "2": 5}
    K3 = invariants_report(complete_graph(3))
    assert (K3["alpha"], K3["omega"], K3["chi"], K3["tau"]) == (1, 3, 3, 1)
    assert invariants_report(cone(cycle_graph(5)))["hall_ratio"] == {"num": 3, "den": 1}
