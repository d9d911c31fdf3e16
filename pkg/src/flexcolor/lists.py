"""List assignments, L-colorability and exact choosability.

Choosability is decided by enumerating list assignments up to a relabeling
of the color pot: colors are introduced in first-use order, so a list only
ever draws from colors already seen plus the next unused ones.  After the
degeneracy reduction every remaining vertex has ``f(v) <= deg(v) < n``,
so the Small Pot Lemma bounds the pot by ``n - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple, Sequence

from .budget import Counter
from .graph import Graph, bits, complete_graph, delete_vertices, induced_subgraph, is_proper, join
from .invariants import chromatic_number


@dataclass(frozen=True)
class ListAssignment:
    lists: tuple[frozenset[int], ...]

    def __post_init__(self):
        lists = tuple(frozenset(x) for x in self.lists)
        for v, lst in enumerate(lists):
            if not lst:
                raise ValueError(f"list of vertex {v} is empty")
            if any(c < 0 for c in lst):
                raise ValueError(f"list of vertex {v} has a negative color")
        object.__setattr__(self, "lists", lists)

    @classmethod
    def uniform(cls, n: int, colors: Iterable[int]) -> ListAssignment:
        colors = frozenset(colors)
        return cls((colors,) * n)

    def __len__(self):
        return len(self.lists)

    def __getitem__(self, v: int) -> frozenset[int]:
        return self.lists[v]

    @property
    def pot(self) -> frozenset[int]:
        return frozenset().union(*self.lists)

    def is_k_assignment(self, k: int) -> bool:
        return all(len(x) == k for x in self.lists)

    def to_json(self) -> dict[str, list[int]]:
        return {str(v): sorted(lst) for v, lst in enumerate(self.lists)}


def _masks(lists: Sequence[Iterable[int]]) -> list[int]:
    out = []
    for lst in lists:
        m = 0
        for c in lst:
            m |= 1 << c
        out.append(m)
    return out


def first_coloring(rows: Sequence[int], avail: list[int]) -> list[int] | None:
    """Backtracking L-coloring on bitmask color sets; most constrained vertex first."""
    n = len(rows)
    col = [-1] * n
    avail = list(avail)

    def rec(left: int) -> bool:
        if not left:
            return True
        best_v, best_c = -1, 1 << 30
        for v in range(n):
            if col[v] < 0:
                c = avail[v].bit_count()
                if c < best_c:
                    best_v, best_c = v, c
                    if c <= 1:
                        break
        v = best_v
        if best_c == 0:
            return False
        nbrs = [u for u in bits(rows[v]) if col[u] < 0]
        a = avail[v]
        while a:
            low = a & -a
            col[v] = low.bit_length() - 1
            saved = [avail[u] for u in nbrs]
            ok = True
            for u in nbrs:
                avail[u] &= ~low
                if not avail[u]:
                    ok = False
            if ok and rec(left - 1):
                return True
            for u, s in zip(nbrs, saved):
                avail[u] = s
            a ^= low
        col[v] = -1
        return False

    return col if rec(n) else None


def find_L_coloring(G: Graph, L: ListAssignment) -> tuple[int, ...] | None:
    if len(L) != G.n:
        raise ValueError(f"list assignment covers {len(L)} vertices, graph has {G.n}")
    col = first_coloring(G.rows, _masks(L.lists))
    return None if col is None else tuple(col)


def canonical_lists(used: int, size: int, pot: int) -> Iterator[tuple[frozenset[int], int]]:
    """Lists of ``size`` colors given ``used`` colors seen so far, up to pot relabeling.

    Yields ``(list, new_used)``; unseen colors enter as ``used, used+1, ...``.
    Lists with more reused colors come first.
    """
    for j in range(min(size, used), -1, -1):
        fresh = size - j
        if used + fresh > pot:
            continue
        new = tuple(range(used, used + fresh))
        for old in combinations(range(used), j):
            yield frozenset(old + new), used + fresh


def count_canonical_assignments(sizes: Sequence[int], pot: int) -> int:
    """Number of assignments ``canonical_lists`` produces for the given list sizes."""
    from math import comb

    states = {0: 1}
    for s in sizes:
        nxt: dict[int, int] = {}
        for used, ways in states.items():
            for j in range(min(s, used) + 1):
                fresh = s - j
                if used + fresh > pot:
                    continue
                nxt[used + fresh] = nxt.get(used + fresh, 0) + ways * comb(used, j)
        states = nxt
    return sum(states.values())


def search_order(G: Graph) -> list[int]:
    """BFS order from a max-degree vertex, so every prefix stays as connected as possible."""
    order, seen = [], 0
    degs = G.degrees()
    while len(order) < G.n:
        start = max((v for v in range(G.n) if not seen >> v & 1), key=lambda v: (degs[v], -v))
        queue = [start]
        seen |= 1 << start
        while queue:
            v = queue.pop(0)
            order.append(v)
            for u in sorted(bits(G.rows[v] & ~seen), key=lambda u: (-degs[u], u)):
                seen |= 1 << u
                queue.append(u)
    return order


def degeneracy_core(G: Graph, f: Sequence[int]) -> list[int]:
    """Vertices left after repeatedly removing any v with f(v) > its current degree."""
    alive = G.full_mask
    changed = True
    while changed:
        changed = False
        for v in bits(alive):
            if f[v] >= (G.rows[v] & alive).bit_count() + 1:
                alive &= ~(1 << v)
                changed = True
    return bits(alive)


class Choosability(NamedTuple):
    choosable: bool
    witness: ListAssignment | None


def is_f_choosable(
    G: Graph, f: Sequence[int], budget: int | None = None, pot_size: int | None = None
) -> Choosability:
    if len(f) != G.n:
        raise ValueError(f"size function covers {len(f)} vertices, graph has {G.n}")
    if any(x < 1 for x in f):
        raise ValueError("list sizes must be positive")
    core = degeneracy_core(G, f)
    if not core:
        return Choosability(True, None)
    H, mapping = induced_subgraph(G, core)
    sizes = [f[v] for v in mapping]
    pot = H.n - 1 if pot_size is None else pot_size
    if max(sizes) > pot:
        raise ValueError(f"list size {max(sizes)} does not fit a pot of {pot} colors")

    order = search_order(H)
    pos = {v: i for i, v in enumerate(order)}
    # adjacency re-indexed along the search order, so a prefix is a low-bit mask
    rows = [0] * H.n
    for v in range(H.n):
        for u in bits(H.rows[v]):
            rows[pos[v]] |= 1 << pos[u]
    osizes = [sizes[v] for v in order]
    counter = Counter(budget, "choosability search")
    chosen: list[int] = []

    def colorable(m: int) -> bool:
        prefix = [r & ((1 << m) - 1) for r in rows[:m]]
        return first_coloring(prefix, chosen) is not None

    def rec(i: int, used: int) -> bool:
        if i == H.n:
            return False
        for lst, nused in canonical_lists(used, osizes[i], pot):
            counter.tick()
            m = 0
            for c in lst:
                m |= 1 << c
            chosen.append(m)
            if not colorable(i + 1) or rec(i + 1, nused):
                return True
            chosen.pop()
        return False

    if not rec(0, 0):
        return Choosability(True, None)
    core_lists = {mapping[order[i]]: frozenset(bits(m)) for i, m in enumerate(chosen)}
    for i in range(len(chosen), H.n):
        core_lists[mapping[order[i]]] = frozenset(range(osizes[i]))
    lists = [core_lists.get(v, frozenset(range(f[v]))) for v in range(G.n)]
    return Choosability(False, ListAssignment(tuple(lists)))


def is_k_choosable(G: Graph, k: int, budget: int | None = None) -> Choosability:
    if k < 1:
        raise ValueError("k must be positive")
    return is_f_choosable(G, [k] * G.n, budget)


def list_chromatic_number(G: Graph, budget: int | None = None) -> int:
    k = chromatic_number(G)
    while not is_k_choosable(G, k, budget).choosable:
        k += 1
    return k


@dataclass(frozen=True)
class SmallPotInstance:
    """H = K_N v (G - S) with the size function used to color the remainder of a class."""

    H: Graph
    f: tuple[int, ...]
    C: tuple[int, ...]
    t: int
    k: int
    s: int
    N: int

    @property
    def required_N(self) -> int:
        """Lower bound on N under which H is guaranteed f-choosable."""
        t, k, s = self.t, self.k, self.s
        if not self.C:
            return max(1, t - 2 * k - s + 1)
        return max(1, (t - (k + s)) * (t - (s + len(self.C) + 1)))


def lemma11_f(G: Graph, S: Iterable[int], coloring: Sequence[int], N: int) -> SmallPotInstance:
    S = sorted(set(S))
    if N < 1:
        raise ValueError("N must be positive")
    if not S:
        raise ValueError("S must be nonempty")
    if not is_proper(G, coloring):
        raise ValueError("coloring is not proper")
    k = chromatic_number(G)
    if len(set(coloring)) > k:
        raise ValueError(f"coloring uses {len(set(coloring))} colors, chi(G) = {k}")
    shade = {coloring[v] for v in S}
    if len(shade) != 1:
        raise ValueError("S is not monochromatic under the coloring")
    (c,) = shade
    C_old = [v for v in range(G.n) if coloring[v] == c and v not in S]
    if len(S) == G.n:
        H = complete_graph(N)
        mapping = []
    else:
        rest, mapping = delete_vertices(G, S)
        H = join(complete_graph(N), rest)
    index = {v: N + i for i, v in enumerate(mapping)}
    C = tuple(index[v] for v in C_old)
    f = tuple(N + k if v in C else N + k - 1 for v in range(H.n))
    return SmallPotInstance(H, f, C, G.n, k, len(S), N)
