"""Property suites that check the results against brute force at desk scale.

Every suite returns a JSON-ready report with ``status`` in {pass, fail,
inconclusive}; failures carry serialized counterexamples.  Reports contain
no timings, so equal parameters give byte-identical JSON.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Iterable

from .budget import BudgetExceeded
from .constructions import (
    ConeInstance,
    ContractBreach,
    PaperClaimViolation,
    converse_certificate,
    hallin_bound,
    ohba_condition,
    ohba_threshold,
    theorem3_cone_coloring,
)
from .flex import Request, chi_ell_flex, epsilon_ell, is_flexible, max_satisfied
from .graph import Graph, complete_graph, cone, cycle_graph, from_edge_list, is_proper, join, path_graph
from .invariants import (
    chromatic_number,
    clique_number,
    fraction_json,
    hall_ratio,
    independence_number,
    join_w_profile,
    tau,
    w_profile,
)
from .io import all_graphs, emit_graph6, load_catalog
from .lists import ListAssignment, find_L_coloring, is_k_choosable, list_chromatic_number

SCHEMA = "flexcolor/1"


class Suite:
    def __init__(self, name: str, **params):
        self.name = name
        self.params = params
        self.checks: list[dict] = []
        self.counterexamples: list[dict] = []
        self.inconclusive: list[str] = []

    def check(self, label: str, ok: bool, counterexample: dict | None = None, **detail):
        entry = {"check": label, "ok": bool(ok)}
        entry.update(detail)
        self.checks.append(entry)
        if not ok:
            self.counterexamples.append({"check": label, **(counterexample or detail)})
        return ok

    def report(self) -> dict:
        if self.counterexamples:
            status = "fail"
        elif self.inconclusive:
            status = "inconclusive"
        else:
            status = "pass"
        return {
            "schema": SCHEMA,
            "suite": self.name,
            "params": self.params,
            "status": status,
            "passed": sum(c["ok"] for c in self.checks),
            "total": len(self.checks),
            "checks": self.checks,
            "counterexamples": self.counterexamples,
            "inconclusive": self.inconclusive,
        }


def _random_graph(rng: random.Random, n_max: int) -> Graph:
    n = rng.randint(1, n_max)
    p = rng.random()
    return from_edge_list(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p])


def verify_hall(ks: Iterable[int] = (1, 2, 3, 4), cone_ks: Iterable[int] = (2, 3)) -> dict:
    s = Suite("hall", ks=list(ks), cone_ks=list(cone_ks))
    for k in s.params["ks"]:
        rho = hall_ratio(cycle_graph(2 * k + 1))
        s.check(f"rho(C_{2 * k + 1}) = {2 * k + 1}/{k}", rho == Fraction(2 * k + 1, k), value=fraction_json(rho))
    for k in s.params["cone_ks"]:
        rho = hall_ratio(cone(cycle_graph(2 * k + 1)))
        s.check(f"rho(K_1 v C_{2 * k + 1}) = 3", rho == 3, value=fraction_json(rho))
    return s.report()


def verify_theorem8(n: int = 5, trials: int = 200, seed: int = 0) -> dict:
    s = Suite("theorem8", n=n, trials=trials, seed=seed)
    rng = random.Random(seed)
    done = 0
    while done < trials:
        G, H = _random_graph(rng, n), _random_graph(rng, n)
        if independence_number(H) > independence_number(G):
            G, H = H, G
        predicted = join_w_profile(w_profile(H), w_profile(G), H.n)
        direct = w_profile(join(H, G))
        s.check(
            f"w(H v G) H={emit_graph6(H)} G={emit_graph6(G)}",
            predicted == direct,
            predicted=list(predicted.values),
            direct=list(direct.values),
        )
        done += 1
    return s.report()


def verify_lemma6(n_max: int = 6, extra: int = 2) -> dict:
    s = Suite("lemma6", n_max=n_max, extra=extra)
    for G in all_graphs(n_max):
        tg = tau(G)
        omega = clique_number(G)
        for N in range(tg, tg + extra + 1):
            M = join(complete_graph(N), G)
            rho, om = hall_ratio(M), clique_number(M)
            s.check(
                f"{emit_graph6(G)} N={N}",
                rho == om and om == N + omega,
                tau=tg,
                rho=fraction_json(rho),
                omega=om,
            )
    return s.report()


def verify_choosability(budget: int | None = None) -> dict:
    s = Suite("choosability")
    try:
        for n in range(1, 5):
            v = list_chromatic_number(complete_graph(n), budget)
            s.check(f"ch(K_{n}) = {n}", v == n, value=v)
        for n, want in ((4, 2), (5, 3)):
            v = list_chromatic_number(cycle_graph(n), budget)
            s.check(f"ch(C_{n}) = {want}", v == want, value=v)
        K33 = from_edge_list(6, [(i, 3 + j) for i in range(3) for j in range(3)])
        ok, wit = is_k_choosable(K33, 2, budget)
        verified = wit is not None and wit.is_k_assignment(2) and find_L_coloring(K33, wit) is None
        s.check("K_{3,3} not 2-choosable, witness verified", not ok and verified,
                witness=None if wit is None else wit.to_json())
    except BudgetExceeded as exc:
        s.inconclusive.append(str(exc))
    return s.report()


def verify_epsilon(n_max: int = 4, k_max: int = 3, budget: int | None = None) -> dict:
    s = Suite("epsilon", n_max=n_max, k_max=k_max)
    try:
        for n in (2, 3):
            rep = epsilon_ell(complete_graph(n), n, budget)
            s.check(f"eps(K_{n},{n}) = 1/{n}", rep.epsilon == Fraction(1, n), value=fraction_json(rep.epsilon))
        for G in all_graphs(n_max):
            inv_rho = 1 / hall_ratio(G)
            ch = list_chromatic_number(G, budget)
            prev = None
            for k in range(ch, k_max + 1):
                rep = epsilon_ell(G, k, budget)
                e = rep.epsilon
                s.check(
                    f"{emit_graph6(G)} k={k}: eps <= 1/rho",
                    e <= inv_rho and e.denominator <= G.n,
                    eps=fraction_json(e),
                    inv_rho=fraction_json(inv_rho),
                )
                if prev is not None:
                    s.check(f"{emit_graph6(G)} k={k}: eps nondecreasing in k", e >= prev,
                            eps=fraction_json(e), previous=fraction_json(prev))
                prev = e
    except BudgetExceeded as exc:
        s.inconclusive.append(str(exc))
    return s.report()


def _certified_guarantee(G: Graph, budget: int | None):
    """Smallest k >= ch(G) with k >= b/a for the exact a/b = eps(G, k)."""
    k = list_chromatic_number(G, budget)
    while True:
        e = epsilon_ell(G, k, budget).epsilon
        if e > 0 and k * e.numerator >= e.denominator:
            return k, e
        k += 1


def verify_theorem3(trials: int = 500, seed: int = 0, budget: int | None = None) -> dict:
    s = Suite("theorem3", trials=trials, seed=seed)
    rng = random.Random(seed)
    for name, G in (("K_2", complete_graph(2)), ("P_3", path_graph(3)), ("K_3", complete_graph(3))):
        try:
            k, e = _certified_guarantee(G, budget)
        except BudgetExceeded as exc:
            s.inconclusive.append(str(exc))
            continue
        a, b = e.numerator, e.denominator
        M = cone(G)
        bad = []
        above_opt = 0
        for t in range(trials):
            pot = rng.randint(k + 1, (k + 1) * M.n)
            L = ListAssignment(tuple(frozenset(rng.sample(range(pot), k + 1)) for _ in range(M.n)))
            D = [v for v in range(M.n) if rng.random() < 0.7] or [rng.randrange(M.n)]
            z = rng.randrange(pot)
            r = Request({v: (z if z in L[v] and rng.random() < 0.5 else rng.choice(sorted(L[v]))) for v in D})
            try:
                res = theorem3_cone_coloring(ConeInstance(G, L, r, a, b, k))
            except ContractBreach as exc:
                bad.append({"trial": t, "error": str(exc)})
                continue
            proper = is_proper(M, res.coloring) and all(res.coloring[v] in L[v] for v in range(M.n))
            opt, _ = max_satisfied(M, L, r)
            if res.satisfied > opt:
                above_opt += 1
            if not proper or res.satisfied < res.guarantee:
                bad.append({"trial": t, "lists": L.to_json(), "request": r.to_json(),
                            "coloring": list(res.coloring), "satisfied": res.satisfied,
                            "guarantee": res.guarantee})
        s.check(f"cone of {name}: guarantee met on {trials} instances", not bad,
                counterexample={"graph": name, "failures": bad[:5]},
                k=k, base_eps=fraction_json(e), violations=len(bad))
        s.check(f"cone of {name}: never above optimum", above_opt == 0, above_optimum=above_opt)
    return s.report()


def verify_theorem4(budget: int | None = None) -> dict:
    s = Suite("theorem4")
    try:
        for n in (1, 2, 3):
            hb = hallin_bound(complete_graph(n), budget=budget)
            exact = chi_ell_flex(complete_graph(n + 1), "exhaustive", budget=budget).value if n + 1 <= 3 else None
            s.check(f"K_{n}: cone bound {n + 1}", hb == n + 1 and exact in (None, n + 1), bound=hb, exact=exact)
        s.check("C_5: no bound (rho != omega)", hallin_bound(cycle_graph(5)) is None)
        P3 = path_graph(3)
        fx = chi_ell_flex(P3, "exhaustive", budget=budget).value
        hb = hallin_bound(P3, budget=budget)
        s.check("P_3: bound = flex(P_3) + 1", hb == fx + 1, flex=fx, bound=hb)
        cone_fx = chi_ell_flex(cone(P3), "exhaustive", budget=budget).value
        s.check("P_3: cone flex number within bound", cone_fx <= hb, cone_flex=cone_fx, bound=hb)
    except BudgetExceeded as exc:
        s.inconclusive.append(str(exc))
    return s.report()


def verify_prop4(k: int = 2, trials: int = 100_000, seed: int = 0, ceiling_ks: Iterable[int] = (2, 3)) -> dict:
    s = Suite("prop4", k=k, trials=trials, seed=seed, ceiling_ks=list(ceiling_ks))
    C = cycle_graph(2 * k + 1)
    M = cone(C)
    chi = chromatic_number(M)
    s.check("lower bound: chi(K_1 v C) = 4", chi == 4, chi=chi)
    rho = hall_ratio(M)
    s.check("rho(K_1 v C) = 3", rho == 3, rho=fraction_json(rho))
    for kk in s.params["ceiling_ks"]:
        ok = all(math.ceil(Fraction(kk * d, 3 * kk + 1)) == math.ceil(Fraction(d, 3)) for d in range(1, 3 * kk + 1))
        s.check(f"ceil(k|D|/(3k+1)) = ceil(|D|/3) for |D| <= 3k, k={kk}", ok)
    rep = is_flexible(M, 4, Fraction(1, 3), "sampled", seed=seed, trials=trials)
    s.check(f"sampled (4, 1/3)-flexibility over {trials} instances", bool(rep.holds),
            counterexample=rep.to_json(), instances=rep.instances_explored)
    return s.report()


def verify_theorem5(graphs: Iterable[Graph] | None = None, trials: int = 10_000, seed: int = 0,
                    n_max: int = 4, cap: int = 12) -> dict:
    s = Suite("theorem5", trials=trials, seed=seed, n_max=n_max, cap=cap)
    if graphs is None:
        graphs = all_graphs(n_max)
    for i, G in enumerate(graphs):
        g6 = emit_graph6(G)
        cond = ohba_condition(G)
        if cond.holds:
            p = ohba_threshold(G)
            H = join(complete_graph(p), G)
            k = p + chromatic_number(G)
            eps = 1 / hall_ratio(H)
            rep = is_flexible(H, k, eps, "sampled", seed=seed * 1_000_003 + i, trials=trials)
            s.check(f"{g6}: condition holds, p={p}, no counterexample", bool(rep.holds),
                    counterexample={"graph": g6, "p": p, **rep.to_json()},
                    p=p, k=k, eps=fraction_json(eps), instances=rep.instances_explored)
        else:
            tg = tau(G)
            for p in (tg, tg + 1):
                try:
                    cert = converse_certificate(G, cond.violating_set, p, cap=cap)
                    s.check(f"{g6}: condition fails, certificate at p={p}", cert.verified is not False,
                            verified=cert.verified, S=list(cond.violating_set), best=cert.best_satisfied)
                    if cert.verified is None:
                        s.inconclusive.append(f"{g6}: certificate at p={p} beyond cap {cap}")
                except PaperClaimViolation as exc:
                    s.check(f"{g6}: condition fails, certificate at p={p}", False,
                            counterexample={"graph": g6, "p": p, "error": str(exc)})
    return s.report()


def verify_theorem5_catalog(catalog: str, **kw) -> dict:
    rep = verify_theorem5(load_catalog(catalog), **kw)
    rep["params"]["catalog"] = catalog
    return rep


SUITES = {
    "hall": verify_hall,
    "theorem8": verify_theorem8,
    "lemma6": verify_lemma6,
    "choosability": verify_choosability,
    "epsilon": verify_epsilon,
    "theorem3": verify_theorem3,
    "theorem4": verify_theorem4,
    "prop4": verify_prop4,
    "theorem5": verify_theorem5,
}
