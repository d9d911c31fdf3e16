"""Graph ingestion: graph6, plain edge lists, named builtins, catalogs."""

from __future__ import annotations

import re
from importlib import resources
from pathlib import Path
from typing import Iterator

from .graph import (
    MAX_VERTICES,
    Graph,
    GraphError,
    complete_bipartite,
    complete_graph,
    cone,
    cycle_graph,
    empty_graph,
    from_edge_list,
    join,
    path_graph,
)

GRAPH6_HEADER = ">>graph6<<"


class GraphFormatError(GraphError):
    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


def emit_graph6(G: Graph) -> str:
    n = G.n
    if n > MAX_VERTICES:
        raise GraphError(f"graph6 short form supports n <= {MAX_VERTICES}, got {n}")
    bitstream = [G.adj(i, j) for j in range(1, n) for i in range(j)]
    bitstream += [False] * (-len(bitstream) % 6)
    out = [chr(n + 63)]
    for i in range(0, len(bitstream), 6):
        chunk = 0
        for b in bitstream[i:i + 6]:
            chunk = chunk << 1 | b
        out.append(chr(chunk + 63))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    base = 0
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER):]
        base = len(GRAPH6_HEADER)
    if not s:
        raise GraphFormatError("empty graph6 string", base)
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise GraphFormatError(f"invalid graph6 character {ch!r}", base + i)
    if s[0] == "~":
        raise GraphFormatError("long-form graph6 sizes (n > 62) are not supported", base)
    n = ord(s[0]) - 63
    if n < 1:
        raise GraphFormatError("graph6 graphs must have at least one vertex", base)
    nbits = n * (n - 1) // 2
    expected = 1 + (nbits + 5) // 6
    if len(s) != expected:
        raise GraphFormatError(
            f"graph6 length {len(s)} does not match n={n} (expected {expected})",
            base + min(len(s), expected),
        )
    edges = []
    pos = 0
    for j in range(1, n):
        for i in range(j):
            byte = ord(s[1 + pos // 6]) - 63
            if byte >> (5 - pos % 6) & 1:
                edges.append((i, j))
            pos += 1
    return from_edge_list(n, edges)


def parse_edge_list_text(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines of ``u v`` (``#`` comments allowed)."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise GraphFormatError("empty edge-list input")
    try:
        n, m = (int(x) for x in lines[0].split())
        edges = [tuple(int(x) for x in ln.split()) for ln in lines[1:]]
    except ValueError as exc:
        raise GraphFormatError(f"malformed edge-list input: {exc}") from None
    if len(edges) != m or any(len(e) != 2 for e in edges):
        raise GraphFormatError(f"header announces {m} edges, found {len(edges)} lines")
    return from_edge_list(n, edges)


def emit_edge_list_text(G: Graph) -> str:
    lines = [f"{G.n} {G.num_edges}"] + [f"{u} {v}" for u, v in G.edges()]
    return "\n".join(lines) + "\n"


_NAMED = [
    (re.compile(r"K_?\{?(\d+)\}?$"), lambda m: complete_graph(int(m[1]))),
    (re.compile(r"K_?\{(\d+),(\d+)\}$"), lambda m: complete_bipartite(int(m[1]), int(m[2]))),
    (re.compile(r"K_?(\d+),(\d+)$"), lambda m: complete_bipartite(int(m[1]), int(m[2]))),
    (re.compile(r"C_?\{?(\d+)\}?$"), lambda m: cycle_graph(int(m[1]))),
    (re.compile(r"P_?\{?(\d+)\}?$"), lambda m: path_graph(int(m[1]))),
    (re.compile(r"E_?\{?(\d+)\}?$"), lambda m: empty_graph(int(m[1]))),
]


def _split_args(body: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in body:
        if ch in "({":
            depth += 1
        elif ch in ")}":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts]


def parse_graph_spec(spec: str) -> Graph:
    """Resolve a CLI graph argument.

    Accepted forms: ``@path`` (graph6 first line, or edge-list text), named
    builtins ``K_n``, ``C_n``, ``P_n``, ``E_n``, ``K_{a,b}``, the combinators
    ``cone(X)`` and ``join(X,Y)``, and finally a raw graph6 string.
    """
    s = spec.strip()
    if s.startswith("@"):
        text = Path(s[1:]).read_text()
        first = text.strip().splitlines()[0] if text.strip() else ""
        if re.fullmatch(r"\d+\s+\d+", first.strip()):
            return parse_edge_list_text(text)
        return parse_graph6(first)
    m = re.fullmatch(r"(cone|join)\((.*)\)", s)
    if m:
        args = _split_args(m[2])
        if m[1] == "cone":
            if len(args) != 1:
                raise GraphFormatError(f"cone takes one argument: {spec!r}")
            return cone(parse_graph_spec(args[0]))
        if len(args) != 2:
            raise GraphFormatError(f"join takes two arguments: {spec!r}")
        return join(parse_graph_spec(args[0]), parse_graph_spec(args[1]))
    for pattern, build in _NAMED:
        m = pattern.fullmatch(s)
        if m:
            return build(m)
    return parse_graph6(s)


def iter_graph6_lines(lines) -> Iterator[Graph]:
    for line in lines:
        line = line.strip()
        if line and not line.startswith("#"):
            yield parse_graph6(line)


def catalog_path(name: str) -> Path:
    """Resolve a catalog file: an existing path, or a bundled name like ``graphs4.g6``."""
    p = Path(name)
    if p.exists():
        return p
    for candidate in (name, name + ".g6"):
        bundled = resources.files("flexcolor") / "data" / candidate
        if bundled.is_file():
            return Path(str(bundled))
    raise FileNotFoundError(f"no catalog named {name!r}")


def load_catalog(name: str) -> list[Graph]:
    with open(catalog_path(name)) as fh:
        return list(iter_graph6_lines(fh))


def all_graphs(n_max: int, n_min: int = 1) -> list[Graph]:
    """Every graph up to isomorphism with ``n_min <= n <= n_max`` (bundled up to 7)."""
    out = []
    for n in range(n_min, n_max + 1):
        out.extend(load_catalog(f"graphs{n}.g6"))
    return out
