"""Exact invariants: alpha, omega, chi, Delta, the w-function, Hall ratio, tau."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graph import Graph, bits, complete_graph, enumerate_proper_colorings, join

# subset tables are 2^n entries
MAX_PROFILE_VERTICES = 22


def maximum_independent_set(G: Graph, within: int | None = None) -> int:
    """Return a maximum independent set of ``G[within]`` as a bitmask.

    Branch and bound over bitsets: vertices of degree <= 1 inside the
    candidate set are taken greedily, otherwise branch on a max-degree vertex.
    """
    rows = G.rows
    cand0 = G.full_mask if within is None else within
    best = [0, 0]  # size, mask

    def rec(cand: int, size: int, chosen: int):
        if not cand:
            if size > best[0]:
                best[0], best[1] = size, chosen
            return
        if size + cand.bit_count() <= best[0]:
            return
        pick, pick_deg = -1, -1
        c = cand
        while c:
            low = c & -c
            v = low.bit_length() - 1
            d = (rows[v] & cand).bit_count()
            if d <= 1:
                rec(cand & ~low & ~rows[v], size + 1, chosen | low)
                return
            if d > pick_deg:
                pick, pick_deg = v, d
            c ^= low
        vb = 1 << pick
        rec(cand & ~vb & ~rows[pick], size + 1, chosen | vb)
        rec(cand & ~vb, size, chosen)

    rec(cand0, 0, 0)
    return best[1]


def independence_number(G: Graph) -> int:
    return maximum_independent_set(G).bit_count()


def clique_number(G: Graph) -> int:
    return independence_number(G.complement())


def max_degree(G: Graph) -> int:
    return max(G.degrees())


def chromatic_number(G: Graph) -> int:
    k = max(1, clique_number(G))
    while True:
        if next(enumerate_proper_colorings(G, k, up_to_color_permutation=True), None) is not None:
            return k
        k += 1


def subset_alphas(G: Graph) -> list[int]:
    """alpha(G[S]) for every vertex subset S, indexed by bitmask."""
    n = G.n
    if n > MAX_PROFILE_VERTICES:
        raise ValueError(f"subset scan limited to n <= {MAX_PROFILE_VERTICES}")
    closed = [r | (1 << v) for v, r in enumerate(G.rows)]
    table = [0] * (1 << n)
    for S in range(1, 1 << n):
        low = S & -S
        v = low.bit_length() - 1
        without = table[S ^ low]
        with_v = 1 + table[S & ~closed[v]]
        table[S] = with_v if with_v > without else without
    return table


@dataclass(frozen=True)
class WProfile:
    """w(a) = order of the largest induced subgraph with independence number a."""

    alpha: int
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != self.alpha:
            raise ValueError("w-profile needs one value per a in [1, alpha]")

    def __getitem__(self, a: int) -> int:
        if not 1 <= a <= self.alpha:
            raise IndexError(f"a={a} outside [1, {self.alpha}]")
        return self.values[a - 1]

    def as_dict(self) -> dict[str, int]:
        return {str(a): w for a, w in enumerate(self.values, start=1)}


def w_profile(G: Graph) -> WProfile:
    table = subset_alphas(G)
    alpha = table[-1]
    exact = [0] * (alpha + 1)
    for S in range(1, 1 << G.n):
        a = table[S]
        size = S.bit_count()
        if size > exact[a]:
            exact[a] = size
    return WProfile(alpha, tuple(exact[1:]))


def hall_ratio(G: Graph) -> Fraction:
    wp = w_profile(G)
    return max(Fraction(w, a) for a, w in enumerate(wp.values, start=1))


def join_w_profile(wH: WProfile, wG: WProfile, nH: int) -> WProfile:
    """w-profile of ``H v G`` from the profiles of its parts (needs alpha(H) <= alpha(G))."""
    if wH.alpha > wG.alpha:
        raise ValueError(
            f"join formula needs alpha(H) <= alpha(G), got {wH.alpha} > {wG.alpha}"
        )
    values = []
    for a in range(1, wG.alpha + 1):
        if a <= wH.alpha:
            values.append(wH[a] + wG[a])
        else:
            values.append(nH + wG[a])
    return WProfile(wG.alpha, tuple(values))


def _ceil_div(p: int, q: int) -> int:
    return -(-p // q)


def tau_from_profile(wp: WProfile) -> int:
    if wp.alpha < 2:
        return 1
    a1 = wp[1]
    return max([1] + [_ceil_div(wp[j] - j * a1, j - 1) for j in range(2, wp.alpha + 1)])


def tau(G: Graph) -> int:
    """Smallest-by-formula N making omega and the Hall ratio of K_N v G coincide."""
    return tau_from_profile(w_profile(G))


def clique_join(N: int, G: Graph) -> Graph:
    return join(complete_graph(N), G)


def fraction_json(x: Fraction) -> dict[str, int]:
    return {"num": x.numerator, "den": x.denominator}


def invariants_report(G: Graph) -> dict:
    wp = w_profile(G)
    return {
        "n": G.n,
        "alpha": wp.alpha,
        "omega": wp[1],
        "chi": chromatic_number(G),
        "delta": max_degree(G),
        "w_profile": wp.as_dict(),
        "hall_ratio": fraction_json(max(Fraction(w, a) for a, w in enumerate(wp.values, 1))),
        "tau": tau_from_profile(wp),
    }
