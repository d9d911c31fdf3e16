import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import graphs
from oracles import epsilon_bruteforce, max_satisfied_bruteforce
from flexcolor.budget import BudgetExceeded
from flexcolor.flex import (
    NotLColorable,
    Request,
    chi_ell_flex,
    epsilon_ell,
    is_eps_satisfiable,
    is_flexible,
    max_satisfied,
    required_satisfied,
)
from flexcolor.graph import complete_graph, cone, cycle_graph, empty_graph, path_graph
from flexcolor.invariants import chromatic_number, hall_ratio, independence_number, max_degree
from flexcolor.io import all_graphs
from flexcolor.lists import ListAssignment, find_L_coloring, is_k_choosable, list_chromatic_number

# exact value pinned by the brute-force oracle in test_epsilon_matches_bruteforce
EPS_C4_2 = Fraction(0)


def test_request_validation():
    r = Request({2: 5, 0: 1})
    assert r.domain == (0, 2) and r.to_json() == {"0": 1, "2": 5}
    with pytest.raises(ValueError):
        Request({})
    with pytest.raises(ValueError):
        r.check(ListAssignment(({1}, {1}, {4})))


def test_max_satisfied_examples():
    K2 = complete_graph(2)
    L = ListAssignment.uniform(2, {1, 2})
    assert max_satisfied(K2, L, {0: 1, 1: 1})[0] == 1
    K4 = complete_graph(4)
    assert max_satisfied(K4, ListAssignment.uniform(4, range(4)), {2: 3})[0] == 1
    C5 = cycle_graph(5)
    count, col = max_satisfied(C5, ListAssignment.uniform(5, {1, 2, 3}), {v: 1 for v in range(5)})
    assert count == 2 and sum(c == 1 for c in col) == 2
    with pytest.raises(NotLColorable):
        max_satisfied(K2, ListAssignment(({1}, {1})), {0: 1})


@given(graphs(max_n=6), st.data())
@settings(max_examples=150)
def test_max_satisfied_against_bruteforce(G, data):
    lists = [frozenset(data.draw(st.sets(st.integers(0, 4), min_size=1, max_size=3))) for _ in range(G.n)]
    D = data.draw(st.sets(st.integers(0, G.n - 1), min_size=1))
    req = {v: data.draw(st.sampled_from(sorted(lists[v]))) for v in D}
    ref = max_satisfied_bruteforce(G, lists, req)
    L = ListAssignment(tuple(lists))
    if ref < 0:
        with pytest.raises(NotLColorable):
            max_satisfied(G, L, req)
        return
    count, col = max_satisfied(G, L, req)
    assert count == ref
    assert Request(req).satisfied_by(col) == count
    for eps in (Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(1)):
        assert is_eps_satisfiable(G, L, req, eps) == (ref >= eps * len(req))


def test_eps_satisfiable_threshold():
    C5 = cycle_graph(5)
    L = ListAssignment.uniform(5, {1, 2, 3})
    r = {v: 1 for v in range(5)}
    assert is_eps_satisfiable(C5, L, r, 0)
    assert is_eps_satisfiable(C5, L, r, Fraction(2, 5))
    assert not is_eps_satisfiable(C5, L, r, Fraction(3, 5))


@pytest.mark.parametrize("k", [2, 3])
def test_ceiling_collapse(k):
    for d in range(1, 3 * k + 1):
        assert required_satisfied(Fraction(k, 3 * k + 1), d) == math.ceil(Fraction(d, 3))


@pytest.mark.parametrize(
    "G, k",
    [(complete_graph(2), 2), (path_graph(3), 2), (complete_graph(3), 3), (empty_graph(3), 1),
     (path_graph(3), 3), (cycle_graph(4), 2)],
    ids=["K2", "P3", "K3", "E3", "P3k3", "C4"],
)
def test_epsilon_matches_bruteforce(G, k):
    rep = epsilon_ell(G, k)
    assert rep.epsilon == epsilon_bruteforce(G, k)
    w = rep.witness
    assert max_satisfied(G, w.L, w.request)[0] == w.satisfied
    assert Fraction(w.satisfied, len(w.request.values)) == rep.epsilon


def test_epsilon_known_values():
    assert epsilon_ell(complete_graph(2), 2).epsilon == Fraction(1, 2)
    assert epsilon_ell(complete_graph(3), 3).epsilon == Fraction(1, 3)
    assert epsilon_ell(cycle_graph(4), 2).epsilon == EPS_C4_2
    with pytest.raises(NotLColorable):
        epsilon_ell(complete_graph(3), 2)
    with pytest.raises(BudgetExceeded):
        epsilon_ell(cone(cycle_graph(5)), 4)


def test_epsilon_bounds_and_monotone_on_small_graphs():
    for G in all_graphs(3):
        inv = 1 / hall_ratio(G)
        prev = None
        for k in range(list_chromatic_number(G), 4):
            e = epsilon_ell(G, k).epsilon
            assert 0 <= e <= inv and e.denominator <= G.n
            if prev is not None:
                assert e >= prev
            prev = e


def test_constant_request_cap():
    rng = random.Random(3)
    for G in all_graphs(5):
        k = max_degree(G) + 1
        for _ in range(5):
            lists = [frozenset(rng.sample(range(k + 2), k)) | {0} for _ in range(G.n)]
            count, _ = max_satisfied(G, ListAssignment(tuple(lists)), {v: 0 for v in range(G.n)})
            assert count <= independence_number(G)


def test_flexible_at_zero_is_choosability():
    for G in all_graphs(4):
        for k in (1, 2, 3) if G.n <= 3 else (1, 2):
            assert bool(is_flexible(G, k, 0).holds) == is_k_choosable(G, k).choosable


def test_flexible_examples():
    assert is_flexible(complete_graph(3), 3, Fraction(1, 3)).holds
    rep = is_flexible(complete_graph(3), 3, Fraction(1, 2))
    assert rep.holds is False and rep.proven
    C5 = cycle_graph(5)
    rep = is_flexible(C5, 3, Fraction(1, 2), "sampled", seed=0, trials=500)
    assert rep.holds is False
    w = rep.witness
    assert max_satisfied(C5, w.L, w.request)[0] < Fraction(1, 2) * len(w.request.values)


def test_sampled_never_beats_exhaustive():
    for G in all_graphs(3):
        for k in range(list_chromatic_number(G), 4):
            e = epsilon_ell(G, k).epsilon
            above = e + Fraction(1, 12)
            if above <= 1:
                # a sampled run claiming flexibility above the exact value would be a bug,
                # a run below it must pass
                assert is_flexible(G, k, e, "sampled", seed=1, trials=300).holds
                ex = is_flexible(G, k, above, "exhaustive")
                assert not ex.holds


def test_sampled_finds_c4_failure():
    rep = is_flexible(cycle_graph(4), 2, Fraction(1, 4), "sampled", seed=0, trials=2000)
    assert rep.holds is False


def test_sampled_is_deterministic():
    G = cone(cycle_graph(5))
    a = is_flexible(G, 4, Fraction(1, 2), "sampled", seed=11, trials=3000)
    b = is_flexible(G, 4, Fraction(1, 2), "sampled", seed=11, trials=3000)
    assert a == b and a.holds is False


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_chi_ell_flex_complete(n):
    if n == 4:
        num = chi_ell_flex(complete_graph(4), "sampled", trials=2000)
        assert (num.lower, num.upper) == (4, 4)
    else:
        assert chi_ell_flex(complete_graph(n)).value == n


def test_chi_ell_flex_c5_sampled_bracket():
    num = chi_ell_flex(cycle_graph(5), "sampled", trials=3000)
    assert num.lower == num.upper == 3


def test_flex_chain_on_small_graphs():
    for G in all_graphs(4):
        if G.n == 4 and list_chromatic_number(G) > 2:
            continue
        chi, ch = chromatic_number(G), list_chromatic_number(G)
        fx = chi_ell_flex(G).value
        assert chi <= ch <= fx <= max_degree(G) + 1
