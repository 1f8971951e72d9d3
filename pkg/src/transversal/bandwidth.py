"""Bandwidth orderings, proper colourings and bandwidth partitions.

Positions are 1-indexed wherever the block formula is evaluated:
vertex ``order[l - 1]`` sits at position ``l``.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .graph import Graph, GraphError, bits

EXACT_MAX_VERTICES = 20
COLORING_MAX_VERTICES = 64


class BudgetExhausted(RuntimeError):
    pass


def stretch(g: Graph, order: Sequence[int]) -> int:
    """Largest position gap across an edge under ``order``."""
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    return max((abs(pos[u] - pos[v]) for u, v in g.edges()), default=0)


@dataclass(frozen=True)
class BandwidthOrdering:
    order: tuple[int, ...]
    b: int

    @property
    def positions(self) -> tuple[int, ...]:
        """0-indexed position of each vertex."""
        pos = [0] * len(self.order)
        for i, v in enumerate(self.order):
            pos[v] = i
        return tuple(pos)

    @classmethod
    def of(cls, g: Graph, order: Sequence[int]) -> "BandwidthOrdering":
        order = tuple(order)
        if sorted(order) != list(range(g.n)):
            raise GraphError("order is not a permutation of the vertices")
        return cls(order, stretch(g, order))


# -- heuristic ordering ---------------------------------------------------

def _cuthill_mckee(g: Graph) -> list[int]:
    deg = g.degrees
    seen = 0
    order: list[int] = []
    while len(order) < g.n:
        root = min((v for v in range(g.n) if not seen >> v & 1), key=lambda v: (deg[v], v))
        seen |= 1 << root
        queue = deque([root])
        while queue:
            v = queue.popleft()
            order.append(v)
            fresh = sorted(bits(g.rows[v] & ~seen), key=lambda u: (deg[u], u))
            for u in fresh:
                seen |= 1 << u
                queue.append(u)
    return order


def _score(edges, pos) -> tuple[int, int]:
    best = 0
    count = 0
    for u, v in edges:
        s = abs(pos[u] - pos[v])
        if s > best:
            best, count = s, 1
        elif s == best:
            count += 1
    return best, count


def _hill_climb(g: Graph, order: list[int], seed: int | None, max_passes: int) -> list[int]:
    edges = g.edges()
    n = g.n
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    if seed is not None:
        random.Random(seed).shuffle(pairs)
    score = _score(edges, pos)
    for _ in range(max_passes):
        improved = False
        for i, j in pairs:
            if score[0] <= 1:
                return order
            a, b = order[i], order[j]
            pos[a], pos[b] = j, i
            new = _score(edges, pos)
            if new < score:
                order[i], order[j] = b, a
                score = new
                improved = True
            else:
                pos[a], pos[b] = i, j
        if not improved:
            break
    return order


def heuristic_ordering(g: Graph, seed: int | None = 0, max_passes: int = 10) -> BandwidthOrdering:
    """Cuthill-McKee levels from a minimum-degree root, then 2-swap descent."""
    order = _hill_climb(g, _cuthill_mckee(g), seed, max_passes)
    return BandwidthOrdering.of(g, order)


# -- exact ordering -------------------------------------------------------

def _distances(g: Graph) -> list[list[int]]:
    inf = g.n + 1
    dist = []
    for v in range(g.n):
        row = [inf] * g.n
        row[v] = 0
        seen = frontier = 1 << v
        d = 0
        while frontier:
            d += 1
            grow = 0
            for u in bits(frontier):
                grow |= g.rows[u]
            frontier = grow & ~seen
            seen |= frontier
            for u in bits(frontier):
                row[u] = d
        dist.append(row)
    return dist


class _Search:
    """Decide whether a connected graph has bandwidth <= b.

    An unplaced vertex u must land by ``pos(w) + b * dist(w, u)`` for every
    placed w; sorting these deadlines gives an exact scheduling test
    (deadline of the i-th earliest must be >= p + i), and candidates are
    tried earliest-deadline first.
    """

    def __init__(self, g: Graph, b: int, budget: int, dist: list[list[int]]):
        self.g = g
        self.b = b
        self.budget = budget
        self.nodes = 0
        self.dist = dist
        self.failed: set = set()

    def run(self) -> list[int] | None:
        n = self.g.n
        # peripheral vertices first: they usually start an optimal layout
        for first in sorted(range(n), key=lambda v: (-max(self.dist[v]), v)):
            seq = [first]
            deadline = [n - 1] * n
            if self._feasible(seq, deadline) and self._extend(seq, 1 << first, deadline):
                return seq
        return None

    def _feasible(self, seq: list[int], deadline: list[int]) -> bool:
        p = len(seq)
        w = seq[-1]
        row = self.dist[w]
        placed = set(seq)
        pending = []
        for u in range(self.g.n):
            if u in placed:
                continue
            dl = p - 1 + self.b * row[u]
            if dl < deadline[u]:
                deadline[u] = dl
            pending.append(deadline[u])
        pending.sort()
        return all(dl >= p + i for i, dl in enumerate(pending))

    def _extend(self, seq: list[int], placed: int, deadline: list[int]) -> bool:
        g = self.g
        p = len(seq)
        if p == g.n:
            return True
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExhausted(f"exact bandwidth search exceeded {self.budget} nodes")
        key = (placed, tuple(seq[max(0, p - self.b):]))
        if key in self.failed:
            return False
        unplaced = [u for u in range(g.n) if not placed >> u & 1]
        unplaced.sort(key=lambda u: (deadline[u], u))
        for v in unplaced:
            if deadline[v] < p:
                break
            seq.append(v)
            child = deadline.copy()
            if self._feasible(seq, child) and self._extend(seq, placed | 1 << v, child):
                return True
            seq.pop()
        self.failed.add(key)
        return False


def _lower_bound(g: Graph) -> int:
    """The radius-d ball around any vertex fits in ``2 d b + 1`` positions."""
    if g.num_edges == 0:
        return 0
    best = 1
    for v in range(g.n):
        ball = frontier = 1 << v
        d = 0
        while True:
            grow = 0
            for u in bits(frontier):
                grow |= g.rows[u]
            frontier = grow & ~ball
            if not frontier:
                break
            ball |= frontier
            d += 1
            best = max(best, -(-(ball.bit_count() - 1) // (2 * d)))
    return best


def _components(g: Graph) -> list[list[int]]:
    seen = 0
    comps = []
    for v in range(g.n):
        if seen >> v & 1:
            continue
        comp = frontier = 1 << v
        while frontier:
            grow = 0
            for u in bits(frontier):
                grow |= g.rows[u]
            frontier = grow & ~comp
            comp |= frontier
        seen |= comp
        comps.append(list(bits(comp)))
    return comps


def _exact_connected(g: Graph, budget: int) -> tuple[list[int], int]:
    best = heuristic_ordering(g)
    dist = _distances(g)
    spent = 0
    for b in range(_lower_bound(g), best.b):
        search = _Search(g, b, budget - spent, dist)
        found = search.run()
        spent += search.nodes
        if found is not None:
            return found, spent
    return list(best.order), spent


def exact_ordering(g: Graph, budget: int = 2_000_000) -> BandwidthOrdering:
    """Minimum-bandwidth ordering; components are solved independently."""
    if g.n > EXACT_MAX_VERTICES:
        raise GraphError(
            f"exact bandwidth is limited to n <= {EXACT_MAX_VERTICES}; use mode='heuristic'"
        )
    order: list[int] = []
    spent = 0
    for comp in _components(g):
        if len(comp) <= 2:
            order.extend(comp)
            continue
        local, used = _exact_connected(g.induced(comp), budget - spent)
        spent += used
        order.extend(comp[i] for i in local)
    return BandwidthOrdering.of(g, order)


def compute_ordering(
    g: Graph, mode: str = "exact", budget: int = 2_000_000, seed: int | None = 0
) -> BandwidthOrdering:
    if mode == "exact":
        return exact_ordering(g, budget)
    if mode == "heuristic":
        return heuristic_ordering(g, seed)
    raise ValueError(f"unknown ordering mode {mode!r}")


# -- colourings -----------------------------------------------------------

@dataclass(frozen=True)
class ProperColoring:
    """``color[v]`` in ``1..k``."""

    color: tuple[int, ...]
    k: int

    def classes(self) -> list[frozenset[int]]:
        return [frozenset(v for v, c in enumerate(self.color) if c == i) for i in range(1, self.k + 1)]

    def is_proper(self, g: Graph) -> bool:
        return all(1 <= c <= self.k for c in self.color) and all(
            self.color[u] != self.color[v] for u, v in g.edges()
        )


def proper_coloring(g: Graph, k: int) -> ProperColoring | None:
    """A proper k-colouring by DSATUR-ordered backtracking, or ``None``."""
    if k < 1:
        raise GraphError("k must be positive")
    if g.n > COLORING_MAX_VERTICES:
        raise GraphError(f"exact colouring is limited to n <= {COLORING_MAX_VERTICES}")
    n = g.n
    color = [0] * n
    deg = g.degrees

    def pick() -> int:
        best, key = -1, None
        for v in range(n):
            if color[v]:
                continue
            sat = len({color[u] for u in bits(g.rows[v]) if color[u]})
            cand = (sat, deg[v], -v)
            if key is None or cand > key:
                best, key = v, cand
        return best

    def solve(done: int, used: int) -> bool:
        if done == n:
            return True
        v = pick()
        forbidden = {color[u] for u in bits(g.rows[v])}
        # a fresh colour is interchangeable with any other fresh colour
        for c in range(1, min(k, used + 1) + 1):
            if c in forbidden:
                continue
            color[v] = c
            if solve(done + 1, max(used, c)):
                return True
        color[v] = 0
        return False

    if solve(0, 0):
        return ProperColoring(tuple(color), k)
    return None


def chromatic_coloring(g: Graph) -> ProperColoring:
    """A colouring with the minimum number of colours."""
    for k in range(1, g.n + 1):
        c = proper_coloring(g, k)
        if c is not None:
            return c
    return ProperColoring((), 1)


# -- bandwidth partition --------------------------------------------------

@dataclass(frozen=True)
class BandwidthPartition:
    blocks: tuple[frozenset[int], ...]
    k: int
    alpha_n: int

    @property
    def r(self) -> int:
        return len(self.blocks)

    def block_of(self) -> dict[int, int]:
        """Vertex -> 1-indexed block number."""
        return {v: i for i, blk in enumerate(self.blocks, 1) for v in blk}


def bandwidth_partition(
    g: Graph, ordering: BandwidthOrdering, coloring: ProperColoring, alpha_n: int
) -> BandwidthPartition:
    """Blocks ``W_i = {x_l : (i-k)a + 1 <= l <= i a, c(x_l) = i mod k}``.

    Each position ``l`` admits exactly ``k`` consecutive block indices
    ``ceil(l/a) .. ceil(l/a)+k-1``, one per residue, so the blocks
    partition the vertices.  ``r`` is rounded up to a multiple of ``k``.
    """
    k = coloring.k
    if alpha_n < 1:
        raise GraphError("window width must be positive")
    if ordering.b > alpha_n:
        raise GraphError(f"ordering bandwidth {ordering.b} exceeds window {alpha_n}")
    if not coloring.is_proper(g):
        raise GraphError("colouring is not proper")
    assign: dict[int, int] = {}
    for l, x in enumerate(ordering.order, 1):
        lo = -(-l // alpha_n)
        c = coloring.color[x]
        i = lo + (c - lo) % k
        assert (i - k) * alpha_n + 1 <= l <= i * alpha_n
        assign[x] = i
    top = max(assign.values(), default=0)
    r = max(k, -(-top // k) * k)
    blocks = [set() for _ in range(r)]
    for x, i in assign.items():
        blocks[i - 1].add(x)
    part = BandwidthPartition(tuple(frozenset(b) for b in blocks), k, alpha_n)
    ok, witness = verify_admission(g, part)
    if not ok:
        raise AssertionError(f"construction produced an inadmissible partition at {witness}")
    if any(len(blk) > k * alpha_n for blk in part.blocks):
        raise AssertionError("construction produced an oversized block")
    return part


def verify_admission(g: Graph, part: BandwidthPartition) -> tuple[bool, tuple[int, int] | None]:
    """Check blocks are independent and edges span at most ``k - 1`` blocks.

    Returns ``(True, None)`` or ``(False, edge)`` for the first offending edge.
    """
    where: dict[int, int] = {}
    for i, blk in enumerate(part.blocks):
        for v in blk:
            if v in where:
                raise GraphError(f"vertex {v} lies in two blocks")
            where[v] = i
    if len(where) != g.n or any(not 0 <= v < g.n for v in where):
        raise GraphError("blocks do not partition the vertex set")
    for u, v in g.edges():
        if where[u] == where[v] or abs(where[u] - where[v]) > part.k - 1:
            return False, (u, v)
    return True, None


# -- fragmented intervals -------------------------------------------------

@dataclass(frozen=True)
class FragmentedIntervals:
    """Block-index ranges ``[start, end]`` (1-indexed, inclusive)."""

    intervals: tuple[tuple[int, int], ...]
    ell: int
    initial_bound: int | None = None
    r: int | None = field(default=None, compare=False)

    def __post_init__(self):
        prev_end = None
        for s, e in self.intervals:
            if s < 1 or e < s:
                raise GraphError(f"bad interval [{s}, {e}]")
            if e - s > self.ell - 1:
                raise GraphError(f"interval [{s}, {e}] longer than {self.ell} blocks")
            if prev_end is not None and s - prev_end < self.ell + 1:
                raise GraphError(f"interval [{s}, {e}] too close to the previous one")
            if self.initial_bound is not None and e > self.initial_bound:
                raise GraphError(f"interval [{s}, {e}] beyond the first {self.initial_bound} blocks")
            if self.r is not None and e > self.r:
                raise GraphError(f"interval [{s}, {e}] beyond block {self.r}")
            prev_end = e

    def vertices(self, part: BandwidthPartition) -> frozenset[int]:
        out: set[int] = set()
        for s, e in self.intervals:
            for i in range(s, e + 1):
                out |= part.blocks[i - 1]
        return frozenset(out)


class InsufficientRoom(GraphError):
    def __init__(self, message: str, max_p: int):
        super().__init__(message)
        self.max_p = max_p


def build_fragmented(
    part: BandwidthPartition, ell: int, p: int, initial_bound: int | None = None
) -> FragmentedIntervals:
    """Place ``p`` intervals of ``ell`` blocks greedily, ``ell`` blocks apart."""
    if ell < 1 or p < 1:
        raise GraphError("ell and p must be positive")
    room = part.r if initial_bound is None else min(part.r, initial_bound)
    max_p = (room + ell) // (2 * ell)
    if p > max_p:
        raise InsufficientRoom(
            f"{p} intervals of width {ell} need {(2 * p - 1) * ell} blocks, "
            f"only {room} available (room for {max_p})",
            max_p,
        )
    intervals = tuple((1 + 2 * ell * i, 2 * ell * i + ell) for i in range(p))
    return FragmentedIntervals(intervals, ell, initial_bound, part.r)
