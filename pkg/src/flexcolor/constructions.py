"""Constructive counterparts of the cone and join results.

* ``theorem3_cone_coloring`` turns a satisfaction guarantee a/b for a base
  graph G into a coloring of the cone K_1 v G meeting a/(a+b).
* ``ohba_condition`` / ``ohba_threshold`` decide when joins with large
  cliques have list flexibility number equal to chromatic number, and give
  a sufficient clique size.
* ``converse_certificate`` builds (and checks) the uniform-list, constant
  request obstruction for graphs failing the condition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence

from .budget import BudgetExceeded
from .flex import (
    FlexNumber,
    Request,
    adversarial_instances,
    best_coloring,
    chi_ell_flex,
    is_flexible,
)
from .graph import Graph, bits, complete_graph, cone, enumerate_proper_colorings, from_edge_list, is_proper, join, mask_of
from .invariants import (
    chromatic_number,
    clique_number,
    fraction_json,
    hall_ratio,
    maximum_independent_set,
    tau,
)
from .lists import ListAssignment, _masks

BaseSolver = Callable[[Graph, Sequence[frozenset], dict], tuple[int, Sequence[int]]]


class ContractBreach(RuntimeError):
    """The base oracle returned fewer satisfied requests than its guarantee."""


class HypothesisViolation(ValueError):
    pass


class PaperClaimViolation(AssertionError):
    """A claim that should hold by proof failed on a concrete instance."""


def exact_base_solver(G: Graph, lists: Sequence[frozenset], wanted: dict) -> tuple[int, list[int]]:
    w = [-1] * G.n
    for v, c in wanted.items():
        w[v] = c
    count, col = best_coloring(G.rows, _masks(lists), w)
    if col is None:
        raise ContractBreach("base graph is not colorable from the pruned lists")
    return count, col


@dataclass(frozen=True)
class ConeInstance:
    base: Graph
    L: ListAssignment  # lists of the cone, apex first
    r: Request
    a: int
    b: int
    k: int

    def __post_init__(self):
        if self.a < 1 or self.b < 1:
            raise HypothesisViolation("a and b must be positive")
        if self.k * self.a < self.b:
            raise HypothesisViolation(f"need k >= b/a, got k={self.k}, a/b={self.a}/{self.b}")
        if len(self.L) != self.base.n + 1:
            raise HypothesisViolation("lists must cover the apex and every base vertex")
        if not self.L.is_k_assignment(self.k + 1):
            raise HypothesisViolation(f"every list must have exactly k+1={self.k + 1} colors")
        self.r.check(self.L)

    @property
    def joined(self) -> Graph:
        return cone(self.base)


@dataclass(frozen=True)
class ConeColoring:
    coloring: tuple[int, ...]
    satisfied: int
    guarantee: int
    f: tuple[int, ...]
    f_satisfied: int
    g: tuple[int, ...]
    g_satisfied: int


def _prune(lst: frozenset, drop: int, k: int, requested: int | None) -> frozenset:
    out = set(lst) - {drop}
    if len(out) == k + 1:
        out.remove(max(c for c in out if c != requested))
    return frozenset(out)


def theorem3_cone_coloring(inst: ConeInstance, base_solver: BaseSolver = exact_base_solver) -> ConeColoring:
    """Color K_1 v G from (k+1)-lists satisfying at least ceil(a|D|/(a+b)) requests.

    Two candidates are built: ``f`` gives the apex its least-requested list
    color, ``g`` gives it its own request (or the most-requested color).  Each
    prunes the base lists to k colors and asks ``base_solver`` for a coloring
    meeting a/b on the surviving requests; the better candidate is returned.
    """
    G, L, r, a, b, k = inst.base, inst.L, inst.r, inst.a, inst.b, inst.k
    req = r.as_dict()
    D = len(req)
    apex_req = req.get(0)
    base_req = {v - 1: c for v, c in req.items() if v != 0}
    demand = {z: sum(1 for c in base_req.values() if c == z) for z in L[0]}
    ranked = sorted(L[0], key=lambda z: (-demand[z], z))

    def build(apex_color: int) -> tuple[tuple[int, ...], int]:
        lists = [_prune(L[v + 1], apex_color, k, base_req.get(v)) for v in range(G.n)]
        sub = {v: c for v, c in base_req.items() if c != apex_color}
        got, col = base_solver(G, lists, sub)
        if not is_proper(G, col) or any(col[v] not in lists[v] for v in range(G.n)):
            raise ContractBreach(f"base oracle returned an improper coloring for lists {lists}")
        got = sum(col[v] == c for v, c in sub.items())
        if got * b < a * len(sub):
            raise ContractBreach(
                f"base oracle satisfied {got} of {len(sub)} requests, below {a}/{b}; "
                f"lists={[sorted(x) for x in lists]}, request={sub}"
            )
        full = (apex_color,) + tuple(col)
        return full, r.satisfied_by(full)

    f, f_sat = build(ranked[-1])
    g, g_sat = build(apex_req if apex_req is not None else ranked[0])
    best, best_sat = (f, f_sat) if f_sat >= g_sat else (g, g_sat)
    return ConeColoring(best, best_sat, math.ceil(Fraction(a * D, a + b)), f, f_sat, g, g_sat)


def hallin_bound(G: Graph, flex_number: int | None = None, budget: int | None = None) -> int | None:
    """Certified upper bound k+1 on the cone's list flexibility number when rho(G) = omega(G)."""
    rho = hall_ratio(G)
    omega = clique_number(G)
    if rho != omega:
        return None
    M = cone(G)
    if hall_ratio(M) != 1 + omega:
        raise PaperClaimViolation(f"Hall ratio of the cone is {hall_ratio(M)}, expected {1 + omega}")
    if flex_number is None:
        flex_number = chi_ell_flex(G, "exhaustive", budget=budget).value
    return flex_number + 1


def same_colorable_pairs(G: Graph) -> frozenset[tuple[int, int]]:
    k = chromatic_number(G)
    pairs = set()
    for col in enumerate_proper_colorings(G, k, up_to_color_permutation=True):
        classes: dict[int, list[int]] = {}
        for v, c in enumerate(col):
            classes.setdefault(c, []).append(v)
        for cls in classes.values():
            for i, u in enumerate(cls):
                for v in cls[i + 1:]:
                    pairs.add((u, v))
    return frozenset(pairs)


@dataclass(frozen=True)
class OhbaResult:
    holds: bool
    violating_set: tuple[int, ...] | None = None
    note: str | None = None


def ohba_condition(G: Graph) -> OhbaResult:
    """Does every (omega+1)-set contain two vertices sharing a color in some chi-coloring?"""
    omega = clique_number(G)
    if G.n < omega + 1:
        return OhbaResult(True, None, "vacuous: fewer than omega+1 vertices")
    pairs = same_colorable_pairs(G)
    P = from_edge_list(G.n, pairs)
    mis = maximum_independent_set(P)
    if mis.bit_count() <= omega:
        return OhbaResult(True)
    return OhbaResult(False, tuple(bits(mis)[: omega + 1]))


class ConditionFails(ValueError):
    pass


def ohba_threshold(G: Graph) -> int:
    """Clique size N beyond which K_p v G has list flexibility number chi(K_p v G)."""
    if not ohba_condition(G).holds:
        raise ConditionFails("condition fails; use converse_certificate instead")
    t, k, omega = G.n, chromatic_number(G), clique_number(G)
    return max(2, tau(G), (t - k - 1) * (t - 3) + 1, t - omega)


@dataclass(frozen=True)
class Certificate:
    G: Graph
    H: Graph
    p: int
    k: int
    S: tuple[int, ...]
    L: ListAssignment
    r: Request
    needed: int
    verified: bool | None
    best_satisfied: int | None = None

    def to_json(self) -> dict:
        from .io import emit_graph6

        return {
            "graph": emit_graph6(self.G),
            "H": emit_graph6(self.H),
            "p": self.p,
            "k": self.k,
            "S": list(self.S),
            "lists": self.L.to_json(),
            "request": self.r.to_json(),
            "needed": self.needed,
            "verified": self.verified,
            "best_satisfied": self.best_satisfied,
        }


def converse_certificate(G: Graph, S: Iterable[int], p: int, cap: int = 12) -> Certificate:
    """Uniform lists [p+k] on K_p v G and the constant request 1 on W u S.

    Checked exhaustively when |V(H)| <= ``cap``: no proper coloring may grant
    two requests.  Larger certificates are returned with ``verified=None``.
    """
    S = tuple(sorted(set(S)))
    omega, k, tg = clique_number(G), chromatic_number(G), tau(G)
    if len(S) != omega + 1:
        raise HypothesisViolation(f"|S| must be omega+1 = {omega + 1}")
    pairs = same_colorable_pairs(G)
    if any((u, v) in pairs for i, u in enumerate(S) for v in S[i + 1:]):
        raise HypothesisViolation(f"S={list(S)} contains a same-colorable pair")
    if p < tg:
        raise HypothesisViolation(f"p must be at least tau(G) = {tg}")
    H = join(complete_graph(p), G)
    colors = range(1, p + k + 1)
    L = ListAssignment.uniform(H.n, colors)
    r = Request({v: 1 for v in list(range(p)) + [p + s for s in S]})
    needed = math.ceil(Fraction(p + omega + 1, omega + p))
    if needed != 2:
        raise PaperClaimViolation(f"ceil((p+omega+1)/(p+omega)) = {needed}, expected 2")
    if H.n > cap:
        return Certificate(G, H, p, k, S, L, r, needed, None)
    if hall_ratio(H) != omega + p:
        raise PaperClaimViolation(f"rho(K_p v G) = {hall_ratio(H)}, expected {omega + p}")
    wanted = [1] * p + [1 if v in S else -1 for v in range(G.n)]
    best, col = best_coloring(H.rows, _masks(L.lists), wanted)
    if best >= needed:
        raise PaperClaimViolation(f"coloring {col} satisfies {best} requests of the certificate")
    return Certificate(G, H, p, k, S, L, r, needed, True, best)


def search_condition_violators(graphs: Iterable[Graph], k: int, n_max: int | None = None) -> Iterator[tuple[Graph, tuple[int, ...]]]:
    """Graphs with chi = k and omega = k-1 failing the condition, with a violating set."""
    if k < 3:
        raise ValueError("violators with omega = chi - 1 need k >= 3")
    for G in graphs:
        if n_max is not None and G.n > n_max:
            continue
        if clique_number(G) != k - 1 or chromatic_number(G) != k:
            continue
        res = ohba_condition(G)
        if not res.holds:
            yield G, res.violating_set


def _cone_theorem_certifies(G: Graph, base_flex: int) -> bool:
    """Does the cone guarantee from (base_flex, 1/rho(G)) reach 1/rho of the cone for every |D|?"""
    rho = hall_ratio(G)
    a, b = rho.denominator, rho.numerator
    if base_flex * a < b:
        return False
    rho_m = hall_ratio(cone(G))
    return all(
        math.ceil(Fraction(a * d, a + b)) >= math.ceil(d / rho_m) for d in range(1, G.n + 2)
    )


def question2_probe(
    G: Graph,
    budget: int | None = None,
    base_flex: int | None = None,
    seed: int = 0,
    trials: int = 10_000,
) -> dict:
    """Gather what can be said about chi_lflex(K_1 v G) == chi(K_1 v G).

    ``base_flex`` supplies a known list flexibility number of G when it is
    too costly to compute.  Status is ``decided`` (exact or by the cone
    guarantee), ``evidence`` (sampling only) or ``undecided``.
    """
    M = cone(G)
    chi_g, chi_m = chromatic_number(G), chromatic_number(M)
    rho_m = hall_ratio(M)
    report = {
        "graph_chi": chi_g,
        "cone_chi": chi_m,
        "cone_hall_ratio": fraction_json(rho_m),
        "base_flex": base_flex,
        "base_flex_source": "supplied" if base_flex is not None else None,
    }
    if base_flex is None:
        try:
            base_flex = chi_ell_flex(G, "exhaustive", budget=budget).value
            report["base_flex"] = base_flex
            report["base_flex_source"] = "exhaustive"
        except BudgetExceeded:
            report["base_flex_source"] = "unknown"
    if base_flex is not None and base_flex != chi_g:
        report.update(status="undecided", reason="precondition fails: chi_lflex(G) != chi(G)")
        return report
    hb = hallin_bound(G, base_flex) if base_flex is not None else None
    report["hallin_bound"] = hb

    if base_flex is not None and (hb == chi_m or _cone_theorem_certifies(G, base_flex)):
        report.update(status="decided", method="cone-guarantee", equal=True)
    else:
        try:
            rep = is_flexible(M, chi_m, 1 / rho_m, "exhaustive", budget=budget)
            report.update(status="decided", method="exhaustive", equal=bool(rep.holds), flex=rep.to_json())
        except BudgetExceeded:
            rep = is_flexible(M, chi_m, 1 / rho_m, "sampled", seed=seed, trials=trials)
            if rep.holds:
                report.update(status="evidence", method="sampled", equal=True, flex=rep.to_json())
            else:
                report.update(status="decided", method="sampled", equal=False, flex=rep.to_json())
    if report.get("equal") is False:
        report["answers_open_question"] = True
    if hb == chi_m and report.get("equal") is False:
        raise PaperClaimViolation("probe contradicts the certified cone bound")
    return report
