"""Simple graphs on dense vertex ids with bitset adjacency rows.

A ``Graph`` stores one integer bitmask per vertex; bit ``u`` of ``rows[v]``
is set iff ``uv`` is an edge.  Graphs are immutable and validated on
construction, so every other module may assume symmetry and no loops.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

MAX_VERTICES = 62


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    n: int
    rows: tuple[int, ...]
    labels: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise GraphError("graphs must have at least one vertex")
        if len(self.rows) != self.n:
            raise GraphError(f"expected {self.n} adjacency rows, got {len(self.rows)}")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.rows):
            if row & ~full:
                raise GraphError(f"row {v} references a vertex outside [0, {self.n})")
            if row >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
            u = row
            while u:
                low = u & -u
                w = low.bit_length() - 1
                if not self.rows[w] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {v} and {w}")
                u ^= low
        if self.labels is not None and len(self.labels) != self.n:
            raise GraphError("labels must have one entry per vertex")

    def adj(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return bits(self.rows[v])

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.rows[u]) if u < v]

    @property
    def num_edges(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def complement(self) -> Graph:
        full = self.full_mask
        return Graph(self.n, tuple(full & ~r & ~(1 << v) for v, r in enumerate(self.rows)))

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Return the isomorphic copy in which old vertex ``v`` becomes ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise GraphError("relabeling must be a permutation of the vertices")
        return from_edge_list(self.n, [(perm[u], perm[v]) for u, v in self.edges()])

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edges()})"


def bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def from_edge_list(n: int, edges: Iterable[tuple[int, int]], labels=None) -> Graph:
    if n < 1:
        raise GraphError("graphs must have at least one vertex")
    rows = [0] * n
    for pair in edges:
        u, v = pair
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge {pair!r} has an endpoint outside [0, {n})")
        if u == v:
            raise GraphError(f"edge {pair!r} is a self-loop")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows), None if labels is None else tuple(labels))


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycles need at least 3 vertices")
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return from_edge_list(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def join(G: Graph, H: Graph) -> Graph:
    """Disjoint union of G and H plus every G-H edge; G's vertices come first.

    Labels of the result are ``("G", label)`` / ``("H", label)`` pairs, where
    ``label`` is the operand's own label (or its vertex index when unlabeled).
    """
    n = G.n + H.n
    gmask = G.full_mask
    hmask = H.full_mask << G.n
    rows = [r | hmask for r in G.rows] + [(r << G.n) | gmask for r in H.rows]
    glab = G.labels if G.labels is not None else range(G.n)
    hlab = H.labels if H.labels is not None else range(H.n)
    labels = tuple(("G", x) for x in glab) + tuple(("H", x) for x in hlab)
    if n > MAX_VERTICES:
        raise GraphError(f"join has {n} vertices; at most {MAX_VERTICES} supported")
    return Graph(n, tuple(rows), labels)


def cone(G: Graph) -> Graph:
    return join(complete_graph(1), G)


def induced_subgraph(G: Graph, S: Iterable[int]) -> tuple[Graph, list[int]]:
    """Return ``(G[S], mapping)`` where ``mapping[i]`` is the old id of new vertex ``i``."""
    keep = sorted(set(S))
    if not keep:
        raise GraphError("induced subgraph needs a nonempty vertex set")
    for v in keep:
        if not 0 <= v < G.n:
            raise GraphError(f"vertex {v} outside [0, {G.n})")
    index = {v: i for i, v in enumerate(keep)}
    rows = []
    for v in keep:
        rows.append(mask_of(index[u] for u in bits(G.rows[v]) if u in index))
    labels = None if G.labels is None else tuple(G.labels[v] for v in keep)
    return Graph(len(keep), tuple(rows), labels), keep


def delete_vertices(G: Graph, S: Iterable[int]) -> tuple[Graph, list[int]]:
    drop = set(S)
    for v in drop:
        if not 0 <= v < G.n:
            raise GraphError(f"vertex {v} outside [0, {G.n})")
    if len(drop) >= G.n:
        raise GraphError("cannot delete every vertex")
    return induced_subgraph(G, [v for v in range(G.n) if v not in drop])


def is_proper(G: Graph, coloring: Sequence[int]) -> bool:
    if len(coloring) != G.n:
        return False
    return all(coloring[u] != coloring[v] for u, v in G.edges())


def enumerate_proper_colorings(
    G: Graph, k: int, up_to_color_permutation: bool = False
) -> Iterator[tuple[int, ...]]:
    """Yield proper colorings with colors in ``[0, k)`` in lexicographic order.

    With ``up_to_color_permutation`` only colorings whose colors appear in
    first-use order (0, then 1, ...) are produced, one per color class
    partition.
    """
    if k < 1:
        raise GraphError("need at least one color")
    n = G.n
    rows = G.rows
    col = [-1] * n

    def rec(v: int, used: int) -> Iterator[tuple[int, ...]]:
        if v == n:
            yield tuple(col)
            return
        forbidden = {col[u] for u in bits(rows[v] & ((1 << v) - 1))}
        top = min(k, used + 1) if up_to_color_permutation else k
        for c in range(top):
            if c in forbidden:
                continue
            col[v] = c
            yield from rec(v + 1, max(used, c + 1))
        col[v] = -1

    yield from rec(0, 0)
