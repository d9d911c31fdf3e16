"""Requests, epsilon-satisfiability and the flexibility invariants.

Exhaustive mode enumerates k-assignments up to pot relabeling (pot at most
``k * n``) and, per assignment, every request at once with numpy: all proper
L-colorings form a matrix, all requests another, and the best satisfaction
count per request is a row-wise max of matches.  Sampled mode draws random
and structured adversarial instances; a failure found there is a proof,
a pass is only evidence.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterator, Mapping, Sequence

import numpy as np

from .budget import BudgetExceeded, default_budget
from .graph import Graph, bits
from .invariants import (
    chromatic_number,
    fraction_json,
    hall_ratio,
    max_degree,
    maximum_independent_set,
    subset_alphas,
)
from .lists import ListAssignment, _masks, canonical_lists, count_canonical_assignments, list_chromatic_number


class NotLColorable(ValueError):
    """The graph has no proper L-coloring, so flexibility questions are vacuous."""


@dataclass(frozen=True)
class Request:
    values: tuple[tuple[int, int], ...]

    def __post_init__(self):
        vals = self.values
        if isinstance(vals, Mapping):
            vals = vals.items()
        vals = tuple(sorted((int(v), int(c)) for v, c in vals))
        if not vals:
            raise ValueError("a request needs a nonempty domain")
        if len({v for v, _ in vals}) != len(vals):
            raise ValueError("a request maps each vertex at most once")
        object.__setattr__(self, "values", vals)

    @property
    def domain(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.values)

    def as_dict(self) -> dict[int, int]:
        return dict(self.values)

    def check(self, L: ListAssignment):
        for v, c in self.values:
            if not 0 <= v < len(L):
                raise ValueError(f"request vertex {v} outside the graph")
            if c not in L[v]:
                raise ValueError(f"requested color {c} not in the list of vertex {v}")

    def satisfied_by(self, coloring: Sequence[int]) -> int:
        return sum(coloring[v] == c for v, c in self.values)

    def to_json(self) -> dict[str, int]:
        return {str(v): c for v, c in self.values}


def best_coloring(
    rows: Sequence[int], avail: Sequence[int], wanted: Sequence[int], target: int | None = None
) -> tuple[int, list[int] | None]:
    """Max number of vertices v with coloring(v) == wanted[v] over proper list colorings.

    ``avail`` holds color bitmasks, ``wanted[v]`` is -1 for unrequested
    vertices.  Stops early once ``target`` requests are satisfied.  Returns
    ``(-1, None)`` when no proper coloring exists.
    """
    n = len(rows)
    avail = list(avail)
    col = [-1] * n
    best = [-1, None]
    goal = n + 1 if target is None else target

    def bound(sat: int) -> int:
        extra = 0
        for v in range(n):
            if col[v] < 0 and wanted[v] >= 0 and avail[v] >> wanted[v] & 1:
                extra += 1
        return sat + extra

    def rec(left: int, sat: int) -> bool:
        if not left:
            if sat > best[0]:
                best[0], best[1] = sat, list(col)
            return sat >= goal
        if bound(sat) <= best[0]:
            return False
        v, fewest = -1, 1 << 30
        for u in range(n):
            if col[u] < 0:
                c = avail[u].bit_count()
                if c < fewest:
                    v, fewest = u, c
        if fewest == 0:
            return False
        nbrs = [u for u in bits(rows[v]) if col[u] < 0]
        choices = bits(avail[v])
        w = wanted[v]
        if w >= 0 and avail[v] >> w & 1:
            choices.remove(w)
            choices.insert(0, w)
        for c in choices:
            low = 1 << c
            col[v] = c
            saved = [avail[u] for u in nbrs]
            for u in nbrs:
                avail[u] &= ~low
            if rec(left - 1, sat + (c == w)):
                return True
            for u, s in zip(nbrs, saved):
                avail[u] = s
        col[v] = -1
        return False

    rec(n, 0)
    return best[0], best[1]


def _prepare(G: Graph, L: ListAssignment, r: Request | Mapping[int, int]):
    if len(L) != G.n:
        raise ValueError(f"list assignment covers {len(L)} vertices, graph has {G.n}")
    if not isinstance(r, Request):
        r = Request(r)
    r.check(L)
    wanted = [-1] * G.n
    for v, c in r.values:
        wanted[v] = c
    return r, wanted


def max_satisfied(G: Graph, L: ListAssignment, r: Request | Mapping[int, int]) -> tuple[int, tuple[int, ...]]:
    r, wanted = _prepare(G, L, r)
    count, col = best_coloring(G.rows, _masks(L.lists), wanted)
    if col is None:
        raise NotLColorable("graph is not L-colorable; the flexibility instance is vacuous")
    return count, tuple(col)


def required_satisfied(eps: Fraction, d: int) -> int:
    """Least integer count that is at least eps * d."""
    return math.ceil(Fraction(eps) * d)


def is_eps_satisfiable(G: Graph, L: ListAssignment, r: Request | Mapping[int, int], eps) -> bool:
    r, wanted = _prepare(G, L, r)
    need = required_satisfied(Fraction(eps), len(r.values))
    count, col = best_coloring(G.rows, _masks(L.lists), wanted, target=need)
    if col is None:
        raise NotLColorable("graph is not L-colorable; the flexibility instance is vacuous")
    return count >= need


@dataclass(frozen=True)
class FlexWitness:
    L: ListAssignment
    request: Request | None
    satisfied: int | None  # None when the assignment admits no proper coloring at all

    def to_json(self) -> dict:
        return {
            "lists": self.L.to_json(),
            "request": None if self.request is None else self.request.to_json(),
            "satisfied": self.satisfied,
        }


@dataclass(frozen=True)
class FlexReport:
    k: int
    epsilon: Fraction
    mode: str
    holds: bool | None = None
    proven: bool = True
    witness: FlexWitness | None = None
    instances_explored: int = 0

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "epsilon": fraction_json(self.epsilon),
            "mode": self.mode,
            "holds": self.holds,
            "proven": self.proven,
            "witness": None if self.witness is None else self.witness.to_json(),
            "instances_explored": self.instances_explored,
        }


# ---------------------------------------------------------------- exhaustive


def exhaustive_size(G: Graph, k: int) -> int:
    """Number of (assignment, request) pairs the exhaustive engine visits."""
    return count_canonical_assignments([k] * G.n, k * G.n) * ((k + 1) ** G.n - 1)


class _Exhaustive:
    """Per-graph precomputation shared by every assignment."""

    def __init__(self, G: Graph, k: int):
        self.G, self.k, self.n = G, k, G.n
        n = G.n
        self.choice = np.array(list(product(range(k + 1), repeat=n))[1:], dtype=np.int64)
        self.dsize = (self.choice > 0).sum(axis=1)
        self.scale = math.lcm(*range(1, n + 1))
        self.colorings_idx = np.array(list(product(range(k), repeat=n)), dtype=np.int64)
        edges = G.edges()
        if edges:
            eu = np.array([u for u, _ in edges])
            ev = np.array([v for _, v in edges])
        else:
            eu = ev = np.zeros(0, dtype=np.int64)
        self.eu, self.ev = eu, ev
        self.rng_n = np.arange(n)

    def assignments(self) -> Iterator[list[frozenset[int]]]:
        n, k = self.n, self.k
        pot = k * n
        lists: list[frozenset[int]] = []

        def rec(i: int, used: int):
            if i == n:
                yield list(lists)
                return
            for lst, nused in canonical_lists(used, k, pot):
                lists.append(lst)
                yield from rec(i + 1, nused)
                lists.pop()

        yield from rec(0, 0)

    def evaluate(self, lists: list[frozenset[int]]):
        """Return (best satisfied per request, request colors, proper colorings)."""
        arr = np.array([sorted(x) for x in lists], dtype=np.int64)  # n x k
        cols = arr[self.rng_n, self.colorings_idx]  # k^n x n
        if len(self.eu):
            ok = np.all(cols[:, self.eu] != cols[:, self.ev], axis=1)
            cols = cols[ok]
        padded = np.concatenate([np.full((self.n, 1), -1, dtype=np.int64), arr], axis=1)
        req = padded[self.rng_n, self.choice]  # R x n, -1 = unrequested
        if len(cols) == 0:
            return None, req, cols
        best = (cols[None, :, :] == req[:, None, :]).sum(axis=2).max(axis=1)
        return best, req, cols

    def witness(self, lists, req_row, satisfied) -> FlexWitness:
        r = Request({v: int(c) for v, c in enumerate(req_row) if c >= 0})
        return FlexWitness(ListAssignment(tuple(lists)), r, None if satisfied is None else int(satisfied))


def _check_budget(G: Graph, k: int, budget: int | None):
    budget = default_budget() if budget is None else budget
    need = exhaustive_size(G, k)
    if need > budget:
        raise BudgetExceeded(need, budget, f"exhaustive flexibility for n={G.n}, k={k}")
    return need


def epsilon_ell(G: Graph, k: int, budget: int | None = None) -> FlexReport:
    """Exact largest eps for which G is (k, eps)-flexible (needs k >= list chromatic number)."""
    if k < 1:
        raise ValueError("k must be positive")
    _check_budget(G, k, budget)
    ex = _Exhaustive(G, k)
    best_key = None
    best_val = None
    wit = None
    explored = 0
    for lists in ex.assignments():
        sat, req, _ = ex.evaluate(lists)
        explored += len(req)
        if sat is None:
            raise NotLColorable(
                f"k={k} is below the list chromatic number: lists {[sorted(x) for x in lists]} admit no coloring"
            )
        scaled = sat * (ex.scale // ex.dsize)
        i = int(np.argmin(scaled))
        if best_key is None or scaled[i] < best_key:
            best_key = int(scaled[i])
            best_val = Fraction(int(sat[i]), int(ex.dsize[i]))
            wit = ex.witness(lists, req[i], sat[i])
    return FlexReport(k, best_val, "exhaustive", None, True, wit, explored)


def _flexible_exhaustive(G: Graph, k: int, eps: Fraction, budget: int | None) -> FlexReport:
    _check_budget(G, k, budget)
    ex = _Exhaustive(G, k)
    need = np.array([required_satisfied(eps, int(d)) for d in ex.dsize])
    explored = 0
    for lists in ex.assignments():
        sat, req, _ = ex.evaluate(lists)
        explored += len(req)
        if sat is None:
            wit = FlexWitness(ListAssignment(tuple(lists)), None, None)
            return FlexReport(k, eps, "exhaustive", False, True, wit, explored)
        bad = np.nonzero(sat < need)[0]
        if len(bad):
            i = int(bad[0])
            return FlexReport(k, eps, "exhaustive", False, True, ex.witness(lists, req[i], sat[i]), explored)
    return FlexReport(k, eps, "exhaustive", True, True, None, explored)


# ------------------------------------------------------------------- sampled


def dense_sets(G: Graph, limit: int = 64) -> list[int]:
    """Vertex sets (bitmasks) with the largest |D| / alpha(G[D]) ratios."""
    if G.n <= 16:
        table = subset_alphas(G)
        keyed = sorted(range(1, 1 << G.n), key=lambda S: (-Fraction(S.bit_count(), table[S]), -S.bit_count(), S))
        return keyed[:limit]
    return [G.full_mask]


def _random_clique(G: Graph, rng: random.Random) -> list[int]:
    order = list(range(G.n))
    rng.shuffle(order)
    clique, cand = [], G.full_mask
    for v in order:
        if cand >> v & 1:
            clique.append(v)
            cand &= G.rows[v]
    return clique


def adversarial_instances(G: Graph, k: int, rng: random.Random) -> Iterator[tuple[list[frozenset[int]], dict[int, int]]]:
    """Endless stream of (k-assignment, request) pairs biased toward hard cases.

    Rotates through: uniform lists with random requests, uniform lists with a
    constant request on a high-Hall-ratio set, lists shared along a clique with
    a constant request there, and random lists from small and large pots.
    """
    n = G.n
    dense = dense_sets(G)
    i = 0
    while True:
        kind = i % 5
        i += 1
        if kind in (0, 1):
            lists = [frozenset(range(k))] * n
        elif kind == 2:
            clique = _random_clique(G, rng)
            pot = rng.randint(k, k + 2)
            shared = frozenset(rng.sample(range(pot), k))
            lists = [shared if v in clique else frozenset(rng.sample(range(pot), k)) for v in range(n)]
        elif kind == 3:
            pot = rng.randint(k, k + 2)
            lists = [frozenset(rng.sample(range(pot), k)) for _ in range(n)]
        else:
            pot = rng.randint(k, max(k, min(k * n, 2 * k + n)))
            lists = [frozenset(rng.sample(range(pot), k)) for _ in range(n)]

        if kind == 1:
            D = bits(rng.choice(dense))
            common = set.intersection(*(set(lists[v]) for v in D))
            z = rng.choice(sorted(common))
            req = {v: z for v in D}
        elif kind == 2:
            D = sorted(set(clique) | {v for v in range(n) if rng.random() < 0.3})
            z = rng.choice(sorted(shared))
            req = {v: (z if z in lists[v] else rng.choice(sorted(lists[v]))) for v in D}
        else:
            D = [v for v in range(n) if rng.random() < 0.6] or [rng.randrange(n)]
            z = rng.randrange(k + 2)
            req = {}
            for v in D:
                if z in lists[v] and rng.random() < 0.7:
                    req[v] = z
                else:
                    req[v] = rng.choice(sorted(lists[v]))
        yield lists, req


def _flexible_sampled(G: Graph, k: int, eps: Fraction, seed: int, trials: int) -> FlexReport:
    rng = random.Random(seed)
    stream = adversarial_instances(G, k, rng)
    for t in range(trials):
        lists, req = next(stream)
        wanted = [-1] * G.n
        for v, c in req.items():
            wanted[v] = c
        need = required_satisfied(eps, len(req))
        count, col = best_coloring(G.rows, _masks(lists), wanted, target=need)
        if col is None or count < need:
            wit = FlexWitness(ListAssignment(tuple(lists)), Request(req), None if col is None else count)
            return FlexReport(k, eps, "sampled", False, True, wit, t + 1)
    return FlexReport(k, eps, "sampled", True, False, None, trials)


def is_flexible(
    G: Graph,
    k: int,
    eps,
    mode: str = "exhaustive",
    seed: int = 0,
    trials: int = 10_000,
    budget: int | None = None,
) -> FlexReport:
    if k < 1:
        raise ValueError("k must be positive")
    eps = Fraction(eps)
    if not 0 <= eps <= 1:
        raise ValueError("eps must lie in [0, 1]")
    if mode == "exhaustive":
        return _flexible_exhaustive(G, k, eps, budget)
    if mode == "sampled":
        return _flexible_sampled(G, k, eps, seed, trials)
    raise ValueError(f"unknown mode {mode!r}")


@dataclass(frozen=True)
class FlexNumber:
    """Bracket on the list flexibility number; exact when ``lower == upper`` and proven."""

    lower: int
    upper: int
    proven: bool
    mode: str
    reports: tuple[FlexReport, ...] = field(default=())

    @property
    def value(self) -> int | None:
        return self.lower if self.lower == self.upper and self.proven else None

    def to_json(self) -> dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "proven": self.proven,
            "value": self.value,
            "mode": self.mode,
            "reports": [r.to_json() for r in self.reports],
        }


def chi_ell_flex(
    G: Graph,
    mode: str = "exhaustive",
    seed: int = 0,
    trials: int = 10_000,
    budget: int | None = None,
) -> FlexNumber:
    """Least k with G (k, 1/rho(G))-flexible."""
    eps = 1 / hall_ratio(G)
    cap = max_degree(G) + 1
    reports = []
    if mode == "exhaustive":
        k = list_chromatic_number(G, budget)
        while True:
            rep = is_flexible(G, k, eps, "exhaustive", budget=budget)
            reports.append(rep)
            if rep.holds:
                return FlexNumber(k, k, True, mode, tuple(reports))
            k += 1
    if mode != "sampled":
        raise ValueError(f"unknown mode {mode!r}")
    try:
        lower = list_chromatic_number(G, budget)
    except BudgetExceeded:
        lower = chromatic_number(G)
    for k in range(lower, cap + 1):
        rep = is_flexible(G, k, eps, "sampled", seed=seed, trials=trials)
        reports.append(rep)
        if rep.holds:
            return FlexNumber(lower, k, k == cap, mode, tuple(reports))
        lower = k + 1
    return FlexNumber(cap, cap, True, mode, tuple(reports))
