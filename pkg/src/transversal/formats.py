"""Plain-text file formats for collections, target graphs and embeddings.

Collection file::

    # comment
    n h
    c u v        # one line per coloured edge, 0 <= c < h, 0 <= u < v < n

Target file::

    n
    u v
    ...
    order: v0 v1 ... v_{n-1}     # optional bandwidth ordering
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Sequence

from .graph import Graph, GraphCollection, GraphError


class FormatError(GraphError):
    pass


def _content_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((lineno, line))
    return out


def _ints(line: str, lineno: int, count: int) -> list[int]:
    parts = line.split()
    if len(parts) != count:
        raise FormatError(f"line {lineno}: expected {count} integers, got {line!r}")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise FormatError(f"line {lineno}: non-integer token in {line!r}") from None


def parse_collection(text: str) -> GraphCollection:
    lines = _content_lines(text)
    if not lines:
        raise FormatError("empty collection file")
    lineno, header = lines[0]
    n, h = _ints(header, lineno, 2)
    if h < 1:
        raise FormatError("a collection needs h >= 1")
    edges: list[list[tuple[int, int]]] = [[] for _ in range(h)]
    seen = set()
    for lineno, line in lines[1:]:
        c, u, v = _ints(line, lineno, 3)
        if not 0 <= c < h:
            raise FormatError(f"line {lineno}: colour {c} outside 0..{h - 1}")
        if not 0 <= u < v < n:
            raise FormatError(f"line {lineno}: need 0 <= u < v < n, got {u} {v}")
        if (c, u, v) in seen:
            raise FormatError(f"line {lineno}: duplicate edge {c} {u} {v}")
        seen.add((c, u, v))
        edges[c].append((u, v))
    return GraphCollection(n, tuple(Graph.from_edges(n, es) for es in edges))


def format_collection(coll: GraphCollection) -> str:
    lines = [f"{coll.n} {coll.h}"]
    for c, g in enumerate(coll.layers):
        lines.extend(f"{c} {u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_target(text: str) -> tuple[Graph, list[int] | None]:
    """Parse a target file; returns the graph and the declared order, if any."""
    lines = _content_lines(text)
    if not lines:
        raise FormatError("empty target file")
    lineno, header = lines[0]
    (n,) = _ints(header, lineno, 1)
    edges = []
    order = None
    for lineno, line in lines[1:]:
        if line.startswith("order:"):
            if order is not None:
                raise FormatError(f"line {lineno}: second order line")
            try:
                order = [int(t) for t in line[len("order:"):].split()]
            except ValueError:
                raise FormatError(f"line {lineno}: bad order line") from None
            if sorted(order) != list(range(n)):
                raise FormatError(f"line {lineno}: order is not a permutation of 0..{n - 1}")
            continue
        if order is not None:
            raise FormatError(f"line {lineno}: edge after the order line")
        u, v = _ints(line, lineno, 2)
        if u == v or not (0 <= u < n and 0 <= v < n):
            raise FormatError(f"line {lineno}: bad edge {u} {v}")
        edges.append((u, v))
    if len(set(frozenset(e) for e in edges)) != len(edges):
        raise FormatError("duplicate edge in target file")
    return Graph.from_edges(n, edges), order


def format_target(g: Graph, order: Sequence[int] | None = None) -> str:
    lines = [str(g.n)]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    if order is not None:
        lines.append("order: " + " ".join(map(str, order)))
    return "\n".join(lines) + "\n"


def read_collection(path: str | Path) -> GraphCollection:
    return parse_collection(Path(path).read_text())


def read_target(path: str | Path) -> tuple[Graph, list[int] | None]:
    return parse_target(Path(path).read_text())


def format_mapping(label: str, pairs: Iterable[tuple[str, str]]) -> str:
    return f"{label}: " + ", ".join(f"{a}→{b}" for a, b in pairs)
