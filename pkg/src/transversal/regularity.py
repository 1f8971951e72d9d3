"""Regularity diagnostics for a bipartite pair (A, B) of a graph.

Exact epsilon-regularity is decided by enumerating every subset A' of one
side (at most 16 vertices).  For fixed A' and a size s, the densest and
sparsest B' of size s are the s vertices of B with the most / fewest
neighbours in A', so one sort per A' yields the extreme subpair densities.

All epsilons may be :class:`~transversal.exact.Root` values; comparisons
are exact.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .exact import Root, as_fraction, ceil_times, compare, le, threshold
from .graph import Graph, GraphError, to_mask

EXACT_MAX_SIDE = 16


class Verdict(str, enum.Enum):
    YES = "yes"
    NO = "no"
    UNTESTED = "untested"


def _sides(g: Graph, a: Iterable[int], b: Iterable[int]) -> tuple[list[int], list[int]]:
    a, b = sorted(set(a)), sorted(set(b))
    if not a or not b:
        raise GraphError("both sides of a pair must be nonempty")
    if set(a) & set(b):
        raise GraphError("the sides of a pair must be disjoint")
    if not all(0 <= v < g.n for v in a + b):
        raise GraphError("pair vertex out of range")
    return a, b


def _edges_between(g: Graph, a: Sequence[int], bmask: int) -> int:
    return sum((g.rows[u] & bmask).bit_count() for u in a)


def pair_density(g: Graph, a: Iterable[int], b: Iterable[int]) -> Fraction:
    a, b = _sides(g, a, b)
    return Fraction(_edges_between(g, a, to_mask(b)), len(a) * len(b))


# -- exact regularity -------------------------------------------------------

@dataclass(frozen=True)
class Subpair:
    a: frozenset[int]
    b: frozenset[int]
    density: Fraction


@dataclass(frozen=True)
class Extremes:
    low: Subpair
    high: Subpair


def _extremes(g: Graph, a: list[int], b: list[int], eps) -> Extremes | None:
    """Sparsest and densest subpairs with ``|A'| >= eps|A|, |B'| >= eps|B|``.

    ``None`` when no subpair is that large (only possible for eps > 1).
    """
    swap = len(a) > len(b)
    if swap:
        a, b = b, a
    na, nb = len(a), len(b)
    amin = max(1, ceil_times(eps, na))
    bmin = max(1, ceil_times(eps, nb))
    if amin > na or bmin > nb:
        return None
    adj = np.array([[g.has_edge(u, v) for v in b] for u in a], dtype=np.int64)
    masks = np.arange(1, 1 << na, dtype=np.int64)
    member = (masks[:, None] >> np.arange(na)[None, :]) & 1
    size_a = member.sum(axis=1)
    keep = size_a >= amin
    masks, member, size_a = masks[keep], member[keep], size_a[keep]
    deg = member @ adj  # rows: A' subsets, cols: degree of each B vertex into A'
    order_hi = np.argsort(-deg, axis=1, kind="stable")
    order_lo = np.argsort(deg, axis=1, kind="stable")
    hi = np.cumsum(np.take_along_axis(deg, order_hi, axis=1), axis=1)
    lo = np.cumsum(np.take_along_axis(deg, order_lo, axis=1), axis=1)
    sizes = np.arange(1, nb + 1)
    denom = size_a[:, None] * sizes[None, :]
    valid = sizes[None, :] >= bmin
    area = np.where(valid, denom, -1)

    def pick(cum, order, best_is_max):
        dens = cum / denom
        dens = np.where(valid, dens, -np.inf if best_is_max else np.inf)
        target = dens.max() if best_is_max else dens.min()
        tied = np.abs(dens - target) < 1e-12
        # larger subpairs first, then earliest subset mask
        score = np.where(tied, area, -2)
        row, col = np.unravel_index(np.argmax(score), score.shape)
        sub_a = frozenset(a[i] for i in range(na) if masks[row] >> i & 1)
        sub_b = frozenset(b[j] for j in order[row, : col + 1])
        return Subpair(sub_a, sub_b, Fraction(int(cum[row, col]), int(denom[row, col])))

    lo_pair = pick(lo, order_lo, False)
    hi_pair = pick(hi, order_hi, True)
    if swap:
        lo_pair = Subpair(lo_pair.b, lo_pair.a, lo_pair.density)
        hi_pair = Subpair(hi_pair.b, hi_pair.a, hi_pair.density)
    return Extremes(lo_pair, hi_pair)


def test_regular_exact(
    g: Graph, a: Iterable[int], b: Iterable[int], eps, d=None
) -> tuple[Verdict, Subpair | None]:
    """Decide (eps, d)-regularity exhaustively; ``d`` defaults to d(A, B).

    Returns ``(YES, None)``, ``(NO, witness)`` with the most deviating
    subpair, or ``(UNTESTED, None)`` when a side exceeds 16 vertices.
    """
    a, b = _sides(g, a, b)
    eps = threshold(eps)
    d = pair_density(g, a, b) if d is None else as_fraction(d)
    if len(a) > EXACT_MAX_SIDE or len(b) > EXACT_MAX_SIDE:
        return Verdict.UNTESTED, None
    ext = _extremes(g, a, b, eps)
    if ext is None:
        return Verdict.YES, None  # vacuous: no subpair is large enough
    up = ext.high.density - d
    down = d - ext.low.density
    if up >= down:
        return (Verdict.NO, ext.high) if not le(up, eps) else (Verdict.YES, None)
    return (Verdict.NO, ext.low) if not le(down, eps) else (Verdict.YES, None)


def test_regular_plus(g: Graph, a: Iterable[int], b: Iterable[int], eps, d) -> Verdict:
    """Is the pair (eps, d')-regular for some ``d' >= d``?"""
    a, b = _sides(g, a, b)
    eps = threshold(eps)
    if len(a) > EXACT_MAX_SIDE or len(b) > EXACT_MAX_SIDE:
        return Verdict.UNTESTED
    ext = _extremes(g, a, b, eps)
    if ext is None:
        return Verdict.YES
    spread = (ext.high.density - ext.low.density) / 2
    ok = le(spread, eps) and le(as_fraction(d) - ext.low.density, eps)
    return Verdict.YES if ok else Verdict.NO


# -- quasi-randomness -------------------------------------------------------

@dataclass(frozen=True)
class QuasiRandomWitness:
    kind: str  # "degree" or "codegree"
    side: str  # "A" or "B"
    vertices: tuple[int, ...]
    value: int
    target: Fraction


def _severity(value: int, target: Fraction) -> Fraction | None:
    """Relative deviation ``|value - target| / target``; None means infinite."""
    if target == 0:
        return Fraction(0) if value == 0 else None
    return abs(value - target) / target


def _quasi_scan(g: Graph, a: list[int], b: list[int], p: Fraction):
    """Yield ``(severity, witness)`` for every degree and codegree condition."""
    for side, own, other in (("A", a, b), ("B", b, a)):
        omask = to_mask(other)
        size = len(other)
        deg_target = p * size
        co_target = p * p * size
        nbrs = {u: g.rows[u] & omask for u in own}
        for u in own:
            value = nbrs[u].bit_count()
            yield _severity(value, deg_target), QuasiRandomWitness("degree", side, (u,), value, deg_target)
        for u, v in combinations(own, 2):
            value = (nbrs[u] & nbrs[v]).bit_count()
            yield _severity(value, co_target), QuasiRandomWitness("codegree", side, (u, v), value, co_target)


def test_quasi_random(
    g: Graph, a: Iterable[int], b: Iterable[int], eps, p
) -> tuple[bool, QuasiRandomWitness | None]:
    """(eps, p)-quasi-randomness; on failure returns the most severe violation."""
    a, b = _sides(g, a, b)
    eps = threshold(eps)
    p = as_fraction(p)
    worst = None
    worst_sev = None
    for sev, wit in _quasi_scan(g, a, b, p):
        if sev is not None and le(sev, eps):
            continue
        if worst is None or (worst_sev is not None and (sev is None or sev > worst_sev)):
            worst, worst_sev = wit, sev
    return worst is None, worst


def quasi_random_epsilon(g: Graph, a: Iterable[int], b: Iterable[int], p) -> Fraction | None:
    """Least eps for which the pair is (eps, p)-quasi-random (None if none)."""
    a, b = _sides(g, a, b)
    best = Fraction(0)
    for sev, _ in _quasi_scan(g, a, b, as_fraction(p)):
        if sev is None:
            return None
        best = max(best, sev)
    return best


# -- super-regularity -------------------------------------------------------

def _low_degree(g: Graph, own: set[int], other: set[int], eps, d: Fraction) -> set[int]:
    omask = to_mask(other)
    size = len(other)
    return {u for u in own if not le(d - Fraction((g.rows[u] & omask).bit_count(), size), eps)}


def super_regular_core(
    g: Graph, a: Iterable[int], b: Iterable[int], eps, d
) -> tuple[frozenset[int], frozenset[int]] | None:
    """Trim vertices with fewer than ``(d - eps)`` x (other side) neighbours.

    Both sides are trimmed together until nothing changes.  ``None`` when a
    side empties.
    """
    a, b = _sides(g, a, b)
    eps = threshold(eps)
    d = as_fraction(d)
    sa, sb = set(a), set(b)
    while sa and sb:
        drop_a = _low_degree(g, sa, sb, eps, d)
        drop_b = _low_degree(g, sb, sa, eps, d)
        if not drop_a and not drop_b:
            return frozenset(sa), frozenset(sb)
        sa -= drop_a
        sb -= drop_b
    return None


def min_degree_condition(g: Graph, a: Iterable[int], b: Iterable[int], eps, d) -> bool:
    a, b = _sides(g, a, b)
    eps, d = threshold(eps), as_fraction(d)
    return not _low_degree(g, set(a), set(b), eps, d) and not _low_degree(g, set(b), set(a), eps, d)


def test_super_regular(g: Graph, a: Iterable[int], b: Iterable[int], eps, d) -> Verdict:
    """(eps, d)-super-regularity: (eps, d+)-regular plus the degree floor."""
    a, b = _sides(g, a, b)
    if not min_degree_condition(g, a, b, eps, d):
        return Verdict.NO
    return test_regular_plus(g, a, b, eps, d)


# -- typical pairs ----------------------------------------------------------

def typical_pairs(
    g: Graph, parts: Sequence[Iterable[int]], eps, d, i: int = 0, j: int = 1
) -> list[tuple[int, int]]:
    """Pairs ``(u, v)`` in ``V_i x V_j`` with large degrees and codegrees.

    Kept when ``|N(u, v) & V_m| >= (d^2 - 4 sqrt(eps)) |V_m|`` for every
    other part m, ``|N(u) & V_j| >= (d - 4 sqrt(eps)) |V_j|`` and
    ``|N(v) & V_i| >= (d - 4 sqrt(eps)) |V_i|``.  Parts are 0-indexed.
    """
    parts = [sorted(set(p)) for p in parts]
    if len(parts) < 2:
        raise GraphError("need at least two parts")
    seen: set[int] = set()
    for p in parts:
        if not p:
            raise GraphError("parts must be nonempty")
        if seen & set(p):
            raise GraphError("parts overlap")
        seen |= set(p)
    if i == j or not (0 <= i < len(parts) and 0 <= j < len(parts)):
        raise GraphError("bad part indices")
    eps = as_fraction(eps)
    d = as_fraction(d)
    slack = Root(eps, 2)  # sqrt(eps); all conditions are x >= base - 4 sqrt(eps)

    def big(count: int, size: int, base: Fraction) -> bool:
        return le((base - Fraction(count, size)) / 4, slack)

    masks = [to_mask(p) for p in parts]
    others = [m for m in range(len(parts)) if m not in (i, j)]
    out = []
    for u in parts[i]:
        if not big((g.rows[u] & masks[j]).bit_count(), len(parts[j]), d):
            continue
        for v in parts[j]:
            if not big((g.rows[v] & masks[i]).bit_count(), len(parts[i]), d):
                continue
            common = g.rows[u] & g.rows[v]
            if all(big((common & masks[m]).bit_count(), len(parts[m]), d * d) for m in others):
                out.append((u, v))
    return out


# -- reports ----------------------------------------------------------------

@dataclass
class PairReport:
    size_a: int
    size_b: int
    density: Fraction
    degrees_a: dict[int, int]
    degrees_b: dict[int, int]
    codegree_moment_a: Fraction
    codegree_moment_b: Fraction
    exact_regular: Verdict
    quasi_random: bool
    super_regular: Verdict
    witness: Subpair | None = None
    quasi_witness: QuasiRandomWitness | None = None
    params: dict[str, str] = field(default_factory=dict)

    def to_text(self) -> str:
        def hist(h: dict[int, int]) -> str:
            return " ".join(f"{k}:{v}" for k, v in sorted(h.items()))

        lines = [f"{k}: {v}" for k, v in self.params.items()]
        lines += [
            f"size_a: {self.size_a}",
            f"size_b: {self.size_b}",
            f"density: {self.density}",
            f"degree_histogram_a: {hist(self.degrees_a)}",
            f"degree_histogram_b: {hist(self.degrees_b)}",
            f"codegree_second_moment_a: {self.codegree_moment_a}",
            f"codegree_second_moment_b: {self.codegree_moment_b}",
            f"exact_regular: {self.exact_regular.value}",
            f"quasi_random: {'yes' if self.quasi_random else 'no'}",
            f"super_regular: {self.super_regular.value}",
        ]
        if self.witness is not None:
            lines.append("witness_a: " + " ".join(map(str, sorted(self.witness.a))))
            lines.append("witness_b: " + " ".join(map(str, sorted(self.witness.b))))
            lines.append(f"witness_density: {self.witness.density}")
        if self.quasi_witness is not None:
            w = self.quasi_witness
            lines.append(
                f"quasi_witness: {w.kind} side={w.side} vertices="
                + ",".join(map(str, w.vertices))
                + f" value={w.value} target={w.target}"
            )
        return "\n".join(lines) + "\n"


def _codegree_moment(g: Graph, own: list[int], omask: int) -> Fraction:
    pairs = list(combinations(own, 2))
    if not pairs:
        return Fraction(0)
    total = sum((g.rows[u] & g.rows[v] & omask).bit_count() ** 2 for u, v in pairs)
    return Fraction(total, len(pairs))


def pair_report(g: Graph, a: Iterable[int], b: Iterable[int], eps, d, p=None) -> PairReport:
    a, b = _sides(g, a, b)
    p = as_fraction(d) if p is None else as_fraction(p)
    amask, bmask = to_mask(a), to_mask(b)
    regular, witness = test_regular_exact(g, a, b, eps)
    quasi, qwit = test_quasi_random(g, a, b, eps, p)
    if len(a) > EXACT_MAX_SIDE or len(b) > EXACT_MAX_SIDE:
        sup = Verdict.UNTESTED
    else:
        sup = test_super_regular(g, a, b, eps, d)
    return PairReport(
        size_a=len(a),
        size_b=len(b),
        density=pair_density(g, a, b),
        degrees_a=dict(Counter((g.rows[u] & bmask).bit_count() for u in a)),
        degrees_b=dict(Counter((g.rows[u] & amask).bit_count() for u in b)),
        codegree_moment_a=_codegree_moment(g, a, bmask),
        codegree_moment_b=_codegree_moment(g, b, amask),
        exact_regular=regular,
        quasi_random=quasi,
        super_regular=sup,
        witness=witness,
        quasi_witness=qwit,
        params={"epsilon": str(eps), "d": str(as_fraction(d)), "p": str(p)},
    )


# these are library functions, not pytest tests
for _f in (test_regular_exact, test_regular_plus, test_quasi_random, test_super_regular):
    _f.__test__ = False
