"""Dense graphs on vertex sets ``0..n-1`` with bitset adjacency rows.

Vertex sets cross the public API as ``frozenset`` objects; internally each
adjacency row is a Python ``int`` whose bit ``v`` marks the edge to ``v``,
so neighbourhood intersections are single ``&`` operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence

MAX_VERTICES = 4096

Edge = tuple[int, int]


class GraphError(ValueError):
    pass


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def from_mask(mask: int) -> frozenset[int]:
    return frozenset(bits(mask))


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True, eq=True)
class Graph:
    """Immutable simple graph; ``rows[v]`` is the neighbour bitmask of ``v``."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise GraphError(f"vertex count {self.n} outside 0..{MAX_VERTICES}")
        if len(self.rows) != self.n:
            raise GraphError("row count does not match n")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.rows):
            if row & ~full:
                raise GraphError(f"row {v} references a vertex >= n")
            if row >> v & 1:
                raise GraphError(f"loop at vertex {v}")
            for u in bits(row):
                if not self.rows[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {v} and {u}")

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << v) for v in range(n)))

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, ((i, i + 1) for i in range(n - 1)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        if n < 3:
            raise GraphError("a cycle needs at least 3 vertices")
        return cls.from_edges(n, ((i, (i + 1) % n) for i in range(n)))

    @classmethod
    def cycle_power(cls, n: int, k: int) -> "Graph":
        """k-th power of the n-cycle: i ~ j iff their cyclic distance is <= k."""
        edges = set()
        for i in range(n):
            for s in range(1, k + 1):
                j = (i + s) % n
                if j != i:
                    edges.add(norm_edge(i, j))
        return cls.from_edges(n, edges)

    @classmethod
    def complete_multipartite(cls, sizes: Sequence[int]) -> "Graph":
        part = []
        for p, size in enumerate(sizes):
            part.extend([p] * size)
        n = len(part)
        return cls.from_edges(
            n, ((u, v) for u, v in combinations(range(n), 2) if part[u] != part[v])
        )

    # -- queries ----------------------------------------------------------

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> frozenset[int]:
        return from_mask(self.rows[v])

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(r.bit_count() for r in self.rows)

    def edges(self) -> list[Edge]:
        """All edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        out = []
        for u, row in enumerate(self.rows):
            for v in bits(row >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    @cached_property
    def num_edges(self) -> int:
        return sum(self.degrees) // 2

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Subgraph induced on ``vertices``, relabelled ``0..len-1`` in order."""
        index = {v: i for i, v in enumerate(vertices)}
        return Graph.from_edges(
            len(vertices),
            ((index[u], index[v]) for u, v in self.edges() if u in index and v in index),
        )

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        if len(set(vs)) != len(vs):
            return False
        mask = to_mask(vs)
        return all((self.rows[v] | 1 << v) & mask == mask for v in vs)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


@dataclass(frozen=True)
class GraphCollection:
    """``h`` graphs (colour layers) on a shared vertex set ``0..n-1``."""

    n: int
    layers: tuple[Graph, ...]

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))
        if not self.layers:
            raise GraphError("a collection needs at least one layer")
        for i, g in enumerate(self.layers):
            if g.n != self.n:
                raise GraphError(f"layer {i} has {g.n} vertices, expected {self.n}")

    @property
    def h(self) -> int:
        return len(self.layers)

    @classmethod
    def identical(cls, g: Graph, h: int) -> "GraphCollection":
        return cls(g.n, (g,) * h)

    @cached_property
    def availability(self) -> tuple[tuple[int, ...], ...]:
        """``availability[u][v]`` is the bitmask of colours whose layer has uv."""
        n = self.n
        table = [[0] * n for _ in range(n)]
        for c, g in enumerate(self.layers):
            bit = 1 << c
            for u, row in enumerate(g.rows):
                tu = table[u]
                for v in bits(row):
                    tu[v] |= bit
        return tuple(tuple(r) for r in table)

    @cached_property
    def union_rows(self) -> tuple[int, ...]:
        """Adjacency rows of the union of all layers."""
        rows = [0] * self.n
        for g in self.layers:
            for v, r in enumerate(g.rows):
                rows[v] |= r
        return tuple(rows)

    @cached_property
    def all_layers_equal(self) -> bool:
        first = self.layers[0]
        return all(g.rows == first.rows for g in self.layers[1:])

    @property
    def min_degree(self) -> int:
        return min(min_degree(g) for g in self.layers)


def min_degree(g: Graph) -> int:
    if g.n == 0:
        raise GraphError("minimum degree of the empty graph is undefined")
    return min(g.degrees)


def common_neighborhood(g: Graph, xs: Iterable[int]) -> frozenset[int]:
    """Vertices adjacent to every member of ``xs``."""
    xs = list(xs)
    if not xs:
        raise GraphError("common neighbourhood of an empty set is not defined here")
    mask = (1 << g.n) - 1
    for x in xs:
        mask &= g.rows[x]
    return from_mask(mask)


def _cliques(g: Graph, k: int, prefix: list[int], cand: int) -> Iterator[tuple[int, ...]]:
    if len(prefix) == k:
        yield tuple(prefix)
        return
    need = k - len(prefix)
    while cand and cand.bit_count() >= need:
        low = cand & -cand
        v = low.bit_length() - 1
        cand ^= low
        prefix.append(v)
        yield from _cliques(g, k, prefix, cand & g.rows[v])
        prefix.pop()


def iter_cliques(g: Graph, k: int) -> Iterator[tuple[int, ...]]:
    """All k-cliques as sorted tuples, lexicographically ordered."""
    yield from _cliques(g, k, [], (1 << g.n) - 1)


def enumerate_cliques(g: Graph, k: int, limit: int) -> list[frozenset[int]]:
    if not 1 <= k <= g.n:
        raise GraphError(f"clique size {k} outside 1..{g.n}")
    if limit < 1:
        raise GraphError("limit must be positive")
    out = []
    for q in iter_cliques(g, k):
        out.append(frozenset(q))
        if len(out) >= limit:
            break
    return out


def extend_clique(g: Graph, q: Iterable[int], k: int) -> frozenset[int] | None:
    """Extend the clique ``q`` to a k-clique, or return ``None`` if impossible.

    Extensions are tried in lexicographic order, so the result is the
    lexicographically first k-clique containing ``q``.
    """
    q = list(q)
    if not q:
        raise GraphError("seed clique must be nonempty")
    if not g.is_clique(q):
        raise GraphError(f"{sorted(q)} is not a clique")
    if len(q) > k:
        raise GraphError(f"seed clique larger than k={k}")
    cand = (1 << g.n) - 1
    for v in q:
        cand &= g.rows[v]
    for ext in _cliques(g, k - len(q), [], cand):
        return frozenset(q) | frozenset(ext)
    return None
