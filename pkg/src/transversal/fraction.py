"""Colour availability and eta-fraction graphs of a collection.

The fraction graph keeps a pair uv when at least an eta share of the
colours in C contain uv.  Shrinking C can add or remove edges, so there is
no monotonicity in C; raising eta only removes edges.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .exact import as_fraction
from .graph import Graph, GraphCollection, GraphError, bits, from_mask, to_mask


def color_availability(coll: GraphCollection, u: int, v: int) -> frozenset[int]:
    """Colours ``i`` whose layer contains the pair ``uv``."""
    if u == v:
        raise GraphError("availability of a loop is undefined")
    if not (0 <= u < coll.n and 0 <= v < coll.n):
        raise GraphError(f"vertex out of range for n={coll.n}")
    return from_mask(coll.availability[u][v])


def _color_mask(coll: GraphCollection, colors: Iterable[int] | None) -> int:
    if colors is None:
        return (1 << coll.h) - 1
    mask = to_mask(colors)
    if mask >> coll.h:
        raise GraphError(f"colour outside 0..{coll.h - 1}")
    return mask


def fraction_graph(coll: GraphCollection, colors: Iterable[int] | None, eta) -> Graph:
    """Graph of pairs lying in at least ``eta * |colors|`` layers of ``colors``.

    ``colors=None`` means every colour.  ``eta`` is exact; the test is the
    integer inequality ``|avail & C| * den >= num * |C|``.
    """
    cmask = _color_mask(coll, colors)
    size = cmask.bit_count()
    if size == 0:
        raise GraphError("colour set must be nonempty")
    eta = as_fraction(eta)
    if not 0 < eta <= 1:
        raise GraphError(f"eta must lie in (0, 1], got {eta}")
    need = eta.numerator * size
    den = eta.denominator
    avail = coll.availability
    rows = [0] * coll.n
    for u in range(coll.n):
        au = avail[u]
        for v in range(u + 1, coll.n):
            if (au[v] & cmask).bit_count() * den >= need:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
    return Graph(coll.n, tuple(rows))


def fraction_threshold(colors_size: int, eta) -> int:
    """Least number of available colours that qualifies a pair."""
    eta = Fraction(as_fraction(eta))
    need = eta * colors_size
    return -(-need.numerator // need.denominator)


def sub_collection(coll: GraphCollection, colors: Iterable[int]) -> GraphCollection:
    """The collection restricted to ``colors`` in ascending order."""
    return GraphCollection(coll.n, tuple(coll.layers[c] for c in bits(_color_mask(coll, colors))))
