from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import DATA, graphs
from oracles import max_satisfied_bruteforce
from flexcolor.constructions import (
    ConditionFails,
    ConeInstance,
    ContractBreach,
    HypothesisViolation,
    converse_certificate,
    exact_base_solver,
    hallin_bound,
    ohba_condition,
    ohba_threshold,
    question2_probe,
    same_colorable_pairs,
    search_condition_violators,
    theorem3_cone_coloring,
)
from flexcolor.flex import Request, is_flexible
from flexcolor.graph import (
    complete_bipartite,
    complete_graph,
    cone,
    cycle_graph,
    empty_graph,
    enumerate_proper_colorings,
    is_proper,
    join,
    path_graph,
)
from flexcolor.invariants import chromatic_number, clique_number, hall_ratio, tau
from flexcolor.io import all_graphs, load_catalog
from flexcolor.lists import ListAssignment

VIOLATORS = load_catalog(str(DATA / "violators9.g6"))

# (base graph, k, a, b): the base is (k, a/b)-flexible, checked in test_bases_are_flexible
BASES = [
    ("E2", empty_graph(2), 1, 1, 1),
    ("K2", complete_graph(2), 2, 1, 2),
    ("P3", path_graph(3), 2, 1, 2),
    ("K3", complete_graph(3), 3, 1, 3),
]


@pytest.mark.parametrize("name, G, k, a, b", BASES, ids=[b[0] for b in BASES])
def test_bases_are_flexible(name, G, k, a, b):
    assert is_flexible(G, k, Fraction(a, b)).holds


@st.composite
def cone_instances(draw):
    _, G, k, a, b = draw(st.sampled_from(BASES))
    lists = [frozenset(draw(st.sets(st.integers(0, k + 2), min_size=k + 1, max_size=k + 1)))
             for _ in range(G.n + 1)]
    D = draw(st.sets(st.integers(0, G.n), min_size=1))
    req = {v: draw(st.sampled_from(sorted(lists[v]))) for v in sorted(D)}
    return ConeInstance(G, ListAssignment(tuple(lists)), Request(req), a, b, k)


@given(cone_instances())
@settings(max_examples=300)
def test_cone_coloring_meets_guarantee(inst):
    out = theorem3_cone_coloring(inst)
    M = inst.joined
    assert is_proper(M, out.coloring)
    assert all(out.coloring[v] in inst.L[v] for v in range(M.n))
    assert out.satisfied == inst.r.satisfied_by(out.coloring)
    assert out.satisfied >= out.guarantee
    assert out.satisfied == max(out.f_satisfied, out.g_satisfied)
    assert out.satisfied <= max_satisfied_bruteforce(M, list(inst.L.lists), inst.r.as_dict())


def test_cone_apex_only_request():
    G = complete_graph(2)
    L = ListAssignment(({1, 2, 3}, {1, 2, 3}, {1, 2, 3}))
    out = theorem3_cone_coloring(ConeInstance(G, L, Request({0: 2}), 1, 2, 2))
    assert out.coloring[0] == 2 and out.satisfied == 1 and out.guarantee == 1


def test_cone_constant_request_on_triangle():
    G = complete_graph(2)
    L = ListAssignment.uniform(3, {1, 2, 3})
    out = theorem3_cone_coloring(ConeInstance(G, L, Request({0: 1, 1: 1, 2: 1}), 1, 2, 2))
    assert out.guarantee == 1 and out.satisfied == 1


def test_cone_coloring_deterministic():
    G = path_graph(3)
    L = ListAssignment(({0, 1, 2}, {1, 2, 3}, {0, 2, 3}, {0, 1, 3}))
    inst = ConeInstance(G, L, Request({0: 0, 1: 1, 2: 0, 3: 0}), 1, 2, 2)
    assert theorem3_cone_coloring(inst) == theorem3_cone_coloring(inst)


def test_cone_hypotheses_rejected():
    G = complete_graph(2)
    L = ListAssignment.uniform(3, {1, 2, 3})
    with pytest.raises(HypothesisViolation):
        ConeInstance(G, L, Request({0: 1}), 1, 3, 2)  # k < b/a
    with pytest.raises(HypothesisViolation):
        ConeInstance(G, ListAssignment.uniform(3, {1, 2}), Request({0: 1}), 1, 2, 2)
    with pytest.raises(HypothesisViolation):
        ConeInstance(G, ListAssignment.uniform(2, {1, 2, 3}), Request({0: 1}), 1, 2, 2)
    with pytest.raises(HypothesisViolation):
        ConeInstance(G, L, Request({0: 1}), 0, 2, 2)
    with pytest.raises(ValueError):
        ConeInstance(G, L, Request({0: 9}), 1, 2, 2)


def test_lying_base_solver_is_caught():
    G = complete_graph(2)
    L = ListAssignment.uniform(3, {1, 2, 3})
    inst = ConeInstance(G, L, Request({1: 1, 2: 2}), 1, 2, 2)

    def improper(G, lists, wanted):
        c = min(lists[0])
        return 0, [c] * G.n

    def stingy(G, lists, wanted):
        _, col = exact_base_solver(G, lists, {})
        for v, c in wanted.items():
            if col[v] == c:
                other = [x for x in lists[v] if x != c and all(x != col[u] for u in G.neighbors(v))]
                if other:
                    col[v] = other[0]
        return 0, col

    with pytest.raises(ContractBreach):
        theorem3_cone_coloring(inst, improper)
    with pytest.raises(ContractBreach):
        theorem3_cone_coloring(inst, stingy)


def test_hallin_bound():
    for n in (1, 2, 3):
        assert hallin_bound(complete_graph(n)) == n + 1
    assert hallin_bound(path_graph(3)) == 3
    assert hallin_bound(cycle_graph(5)) is None
    assert hallin_bound(cone(cycle_graph(5)), flex_number=4) == 5


def test_same_colorable_pairs():
    for n in range(1, 6):
        assert same_colorable_pairs(complete_graph(n)) == frozenset()
    assert same_colorable_pairs(cycle_graph(4)) == {(0, 2), (1, 3)}
    # K_{2,3}: only same-side pairs
    assert same_colorable_pairs(complete_bipartite(2, 3)) == {(0, 1), (2, 3), (2, 4), (3, 4)}


@given(graphs(max_n=6))
@settings(max_examples=60)
def test_same_colorable_pairs_are_independent(G):
    for u, v in same_colorable_pairs(G):
        assert u < v and not G.adj(u, v)


@pytest.mark.parametrize(
    "G", [complete_bipartite(2, 3), complete_bipartite(3, 3), cycle_graph(4), path_graph(5),
          join(empty_graph(2), join(empty_graph(2), empty_graph(3))), empty_graph(4)],
    ids=["K23", "K33", "C4", "P5", "K223", "E4"],
)
def test_condition_holds(G):
    assert ohba_condition(G).holds


def test_condition_holds_when_omega_equals_chi():
    for G in all_graphs(6):
        if clique_number(G) == chromatic_number(G):
            assert ohba_condition(G).holds


@pytest.mark.parametrize("G", VIOLATORS, ids=[str(i) for i in range(len(VIOLATORS))])
def test_violator_fixtures(G):
    res = ohba_condition(G)
    assert not res.holds
    S = res.violating_set
    omega = clique_number(G)
    assert (G.n, omega, chromatic_number(G)) == (9, 3, 4) and len(S) == omega + 1
    pairs = same_colorable_pairs(G)
    assert not any((u, v) in pairs for u in S for v in S if u < v)
    with pytest.raises(ConditionFails):
        ohba_threshold(G)
    # relabeling keeps the verdict
    perm = list(range(G.n))[::-1]
    assert not ohba_condition(G.relabel(perm)).holds


def test_threshold_values():
    for n in range(2, 5):
        assert ohba_threshold(complete_graph(n)) == 2
    assert ohba_threshold(complete_graph(1)) == 3  # the quadratic term is 3 at t = 1
    assert ohba_threshold(cycle_graph(4)) == 2
    assert ohba_threshold(complete_bipartite(3, 3)) == (6 - 2 - 1) * 3 + 1
    for G in all_graphs(5):
        if ohba_condition(G).holds:
            assert ohba_threshold(G) >= max(2, tau(G))


@pytest.mark.parametrize("G", VIOLATORS, ids=[str(i) for i in range(len(VIOLATORS))])
def test_converse_certificate_fixtures(G):
    S = ohba_condition(G).violating_set
    for p in (tau(G), tau(G) + 1):
        cert = converse_certificate(G, S, p)
        assert cert.verified is True and cert.best_satisfied == 1 and cert.needed == 2
        assert cert.H.n == p + G.n and len(cert.r.values) == p + len(S)
        assert hall_ratio(cert.H) == clique_number(G) + p


def test_converse_certificate_structure():
    """Independent check: every proper coloring from [p+k] grants at most one request."""
    G = VIOLATORS[1]
    S = ohba_condition(G).violating_set
    cert = converse_certificate(G, S, tau(G))
    wanted = cert.r.as_dict()
    seen = 0
    for col in enumerate_proper_colorings(cert.H, cert.p + cert.k):
        col = [c + 1 for c in col]
        assert sum(col[v] == c for v, c in wanted.items()) <= 1
        # G sees only the k colors missing from the clique
        assert len(set(col[cert.p:]) & set(col[:cert.p])) == 0
        seen += 1
    assert seen > 0


def test_converse_certificate_errors_and_cap():
    G = VIOLATORS[0]
    S = ohba_condition(G).violating_set
    with pytest.raises(HypothesisViolation):
        converse_certificate(G, S[:-1], 1)
    with pytest.raises(HypothesisViolation):
        converse_certificate(G, S, tau(G) - 1)
    with pytest.raises(HypothesisViolation):
        converse_certificate(cycle_graph(4), (0, 2, 1), 1)
    big = converse_certificate(G, S, 4, cap=12)
    assert big.verified is None and big.best_satisfied is None


def test_no_small_violators():
    assert list(search_condition_violators(all_graphs(7), 3)) == []
    assert list(search_condition_violators(all_graphs(7), 4)) == []
    with pytest.raises(ValueError):
        list(search_condition_violators([], 2))


def test_search_finds_fixtures():
    found = list(search_condition_violators(VIOLATORS, 4))
    assert len(found) == len(VIOLATORS)
    assert list(search_condition_violators(VIOLATORS, 4, n_max=8)) == []


def test_probe_c5_with_known_base():
    rep = question2_probe(cycle_graph(5), base_flex=3)
    assert rep["status"] == "decided" and rep["equal"] is True
    assert rep["cone_chi"] == 4 and rep["hallin_bound"] is None
    assert rep["base_flex_source"] == "supplied"


@pytest.mark.parametrize("n", [1, 2, 3])
def test_probe_complete(n):
    rep = question2_probe(complete_graph(n))
    assert rep["status"] == "decided" and rep["equal"] is True
    assert rep["hallin_bound"] == n + 1 == rep["cone_chi"]


def test_probe_precondition_and_small_budget():
    rep = question2_probe(cycle_graph(5), base_flex=4)
    assert rep["status"] == "undecided"
    rep = question2_probe(cycle_graph(5), budget=1000, trials=200)
    assert rep["base_flex_source"] == "unknown" and rep["status"] in {"evidence", "decided"}


def test_iterated_cone():
    """K_2 v C_5: the cone guarantee applied twice, plus a sampled search for a counterexample."""
    M = cone(cycle_graph(5))
    rep = question2_probe(M, base_flex=4)
    assert rep["status"] == "decided" and rep["equal"] is True and rep["cone_chi"] == 5
    H = join(complete_graph(2), cycle_graph(5))
    assert chromatic_number(H) == 5
    assert is_flexible(H, 5, 1 / hall_ratio(H), "sampled", seed=0, trials=400).holds
