"""Clique walks, K_k-factors and 3-independent matchings."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import Graph, GraphError, bits, min_degree


@dataclass(frozen=True)
class CliqueWalk:
    walk: tuple[int, ...]
    k: int

    @property
    def t(self) -> int:
        return len(self.walk)


@dataclass(frozen=True)
class KFactor:
    """Vertex-disjoint k-cliques, each an ascending tuple, sorted by minimum."""

    cliques: tuple[tuple[int, ...], ...]
    k: int


def _check_ordered_clique(r: Graph, q: Sequence[int], k: int, name: str) -> tuple[int, ...]:
    q = tuple(q)
    if len(q) != k:
        raise GraphError(f"{name} must have exactly {k} vertices")
    if not all(0 <= v < r.n for v in q):
        raise GraphError(f"{name} has a vertex out of range")
    if not r.is_clique(q):
        raise GraphError(f"{name} = {q} is not a clique")
    return q


def clique_walk(r: Graph, k: int, q1: Sequence[int], q2: Sequence[int]) -> CliqueWalk | None:
    """Shortest walk from ``q1`` to ``q2`` whose k-windows are all cliques.

    The length ``t`` satisfies ``3k <= t <= 3k^3`` and ``k | t``; among the
    shortest such walks the lexicographically smallest is returned.  States
    are the last ``k - 1`` vertices, explored one layer per walk length.
    Returns ``None`` when no walk of length at most ``3k^3`` exists.
    """
    if k < 2:
        raise GraphError("clique walks need k >= 2")
    q1 = _check_ordered_clique(r, q1, k, "Q1")
    q2 = _check_ordered_clique(r, q2, k, "Q2")
    rows = r.rows
    t_max = 3 * k ** 3

    def step(state: tuple[int, ...]) -> Iterable[int]:
        cand = (1 << r.n) - 1
        for v in state:
            cand &= rows[v]
        return bits(cand)

    def closes(state: tuple[int, ...]) -> bool:
        seq = state + q2
        return all(
            rows[seq[j]] >> seq[i] & 1
            for j in range(k - 1, len(seq))
            for i in range(j - k + 1, j)
        )

    # layers[L] holds the reachable states after L vertices (L >= k)
    layers: list[set[tuple[int, ...]]] = [set() for _ in range(k)]
    layers.append({q1[1:]})
    length = k
    target = None
    while length + k <= t_max:
        if length + k >= 3 * k and (length + k) % k == 0:
            if any(closes(s) for s in layers[length]):
                target = length
                break
        nxt = set()
        for s in layers[length]:
            for v in step(s):
                nxt.add(s[1:] + (v,))
        if not nxt:
            return None
        layers.append(nxt)
        length += 1
    if target is None:
        return None

    # backward pass: which states can still finish exactly at ``target``
    good: list[set[tuple[int, ...]]] = [set() for _ in range(target + 1)]
    good[target] = {s for s in layers[target] if closes(s)}
    for length in range(target - 1, k - 1, -1):
        good[length] = {
            s for s in layers[length] if any(s[1:] + (v,) in good[length + 1] for v in step(s))
        }
    walk = list(q1)
    state = q1[1:]
    for length in range(k, target):
        v = min(v for v in step(state) if state[1:] + (v,) in good[length + 1])
        walk.append(v)
        state = state[1:] + (v,)
    walk.extend(q2)
    return CliqueWalk(tuple(walk), k)


def check_clique_walk(r: Graph, cw: CliqueWalk, q1: Sequence[int], q2: Sequence[int]) -> list[str]:
    """Problems with ``cw`` as a walk from ``q1`` to ``q2``; empty when valid."""
    z, k, t = cw.walk, cw.k, cw.t
    problems = []
    if not (3 * k <= t <= 3 * k ** 3 and t % k == 0):
        problems.append(f"length {t} violates 3k <= t <= 3k^3, k | t")
    if tuple(z[:k]) != tuple(q1) or tuple(z[t - k:]) != tuple(q2):
        problems.append("endpoints do not match")
    ends = set(range(k)) | set(range(t - k, t))
    for i in range(t):
        for j in range(i + 1, min(t, i + k)):
            if i in ends and j in ends:
                continue
            if not r.has_edge(z[i], z[j]):
                problems.append(f"z[{i}]={z[i]} and z[{j}]={z[j]} not adjacent")
    return problems


# -- K_k-factors ----------------------------------------------------------

KFACTOR_MAX_VERTICES = 36


def _factor(r: Graph, k: int, uncovered: int) -> list[tuple[int, ...]] | None:
    rows = r.rows
    failed: set[int] = set()

    def cliques_through(v: int, cand: int, size: int, prefix: list[int]):
        if size == 0:
            yield tuple(prefix)
            return
        while cand and cand.bit_count() >= size:
            low = cand & -cand
            u = low.bit_length() - 1
            cand ^= low
            prefix.append(u)
            yield from cliques_through(v, cand & rows[u], size - 1, prefix)
            prefix.pop()

    def solve(left: int) -> list[tuple[int, ...]] | None:
        if not left:
            return []
        if left in failed:
            return None
        low = left & -left
        v = low.bit_length() - 1
        for q in cliques_through(v, rows[v] & left, k - 1, [v]):
            rest = solve(left & ~sum(1 << u for u in q))
            if rest is not None:
                return [q] + rest
        failed.add(left)
        return None

    return solve(uncovered)


def kk_factor(r: Graph, k: int) -> KFactor | None:
    """A K_k-factor by exact backtracking, or ``None`` if there is none.

    The lowest uncovered vertex is always covered next, trying the cliques
    through it in lexicographic order; failed vertex sets are memoised.
    """
    if k < 1 or r.n % k:
        raise GraphError(f"k={k} does not divide {r.n}")
    if r.n > KFACTOR_MAX_VERTICES:
        raise GraphError(f"exact factor search is limited to {KFACTOR_MAX_VERTICES} vertices")
    found = _factor(r, k, (1 << r.n) - 1)
    if found is None:
        return None
    return KFactor(tuple(sorted(found)), k)


def kk_factor_through(r: Graph, k: int, clique: Sequence[int]) -> KFactor | None:
    """A K_k-factor that uses ``clique`` as one of its cliques."""
    if k < 1 or r.n % k:
        raise GraphError(f"k={k} does not divide {r.n}")
    if r.n > KFACTOR_MAX_VERTICES:
        raise GraphError(f"exact factor search is limited to {KFACTOR_MAX_VERTICES} vertices")
    clique = _check_ordered_clique(r, clique, k, "K")
    rest = (1 << r.n) - 1
    for v in clique:
        rest &= ~(1 << v)
    found = _factor(r, k, rest)
    if found is None:
        return None
    return KFactor(tuple(sorted(found + [tuple(sorted(clique))])), k)


def hajnal_szemeredi_degree(r: int, k: int) -> int:
    """Least integer minimum degree meeting ``(1 - 1/k) r``."""
    return -(-(k - 1) * r // k)


def meets_clique_walk_degree(r: Graph, k: int) -> bool:
    """``delta(R) >= (1 - 1/k) r + 1``, compared exactly."""
    return k * (min_degree(r) - 1) >= (k - 1) * r.n


# -- 3-independent matchings ----------------------------------------------

@dataclass(frozen=True)
class Matching3Ind:
    edges: tuple[tuple[int, int], ...]


def _ball2(h: Graph, u: int, v: int) -> int:
    """Vertices within distance 2 of the edge ``uv``."""
    near = h.rows[u] | h.rows[v] | 1 << u | 1 << v
    out = near
    for w in bits(near):
        out |= h.rows[w]
    return out


def three_independent_matching(h: Graph, edges: Iterable[Sequence[int]], delta: int) -> Matching3Ind:
    """Greedy 3-independent matching inside ``edges``.

    Two edges conflict when some endpoints are at distance at most 2, which
    is adjacency in the cube of the line graph; that graph has maximum
    degree below ``2 delta^3``, so a maximal independent set there has at
    least ``|E| / (2 delta^3)`` edges.  Edges are scanned in ascending order.
    """
    if h.max_degree > delta:
        raise GraphError(f"maximum degree {h.max_degree} exceeds {delta}")
    es = sorted({(min(u, v), max(u, v)) for u, v in edges})
    for u, v in es:
        if not h.has_edge(u, v):
            raise GraphError(f"({u}, {v}) is not an edge of H")
    blocked = 0
    chosen = []
    for u, v in es:
        if blocked >> u & 1 or blocked >> v & 1:
            continue
        chosen.append((u, v))
        blocked |= _ball2(h, u, v)
    return Matching3Ind(tuple(chosen))


def matching_lower_bound(num_edges: int, delta: int) -> int:
    """``ceil(|E| / (2 delta^3))``."""
    if num_edges == 0:
        return 0
    return -(-num_edges // (2 * delta ** 3))
