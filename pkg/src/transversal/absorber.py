"""Colour absorbers.

An absorber is a fixed edge set F together with colour sets A and C such
that for *every* C' in C of size ``ell`` the edges of F can be coloured
bijectively by A | C', each edge receiving a colour whose layer contains it.

Construction:

1. match F perfectly into the colours (Hopcroft-Karp);
2. release ``ell`` matched colours; the remaining matched colours are A;
3. rank the other colours by how many ways they can re-enter the matching
   (alternating paths ending at a released edge) and add them to C one at
   a time, keeping only those that preserve resilience;
4. verify resilience, exhaustively when there are at most 10^4 subsets C'.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .graph import Edge, GraphCollection, GraphError, bits, norm_edge, to_mask
from .matching import UNMATCHED, hall_violator, max_matching

EXHAUSTIVE_LIMIT = 10_000


class AbsorberError(GraphError):
    """Construction or absorption failed.

    ``deficient`` holds a Hall-violating edge set, ``failing`` a colour set
    C' for which no perfect matching exists.
    """

    def __init__(self, msg: str, deficient=None, failing=None):
        super().__init__(msg)
        self.deficient = deficient
        self.failing = failing


@dataclass(frozen=True)
class AbsorberTemplate:
    f_edges: tuple[Edge, ...]
    a: frozenset[int]
    c: frozenset[int]
    ell: int
    h: int
    availability: tuple[int, ...]  # colour bitmask per edge of F
    verified: str
    seed: int = 0
    tau: int = 1

    @property
    def m(self) -> int:
        return len(self.f_edges)

    def colors_of(self, i: int) -> frozenset[int]:
        return frozenset(bits(self.availability[i]))

    def to_text(self) -> str:
        lines = [f"absorber {self.m} {self.ell} {self.h}"]
        for (u, v), mask in zip(self.f_edges, self.availability):
            lines.append(f"edge {u} {v} : " + " ".join(map(str, bits(mask))))
        lines.append("A: " + " ".join(map(str, sorted(self.a))))
        lines.append("C: " + " ".join(map(str, sorted(self.c))))
        lines.append(f"verified: {self.verified}")
        lines.append(f"seed: {self.seed}")
        lines.append(f"tau: {self.tau}")
        return "\n".join(lines) + "\n"


def parse_template(text: str) -> AbsorberTemplate:
    edges, masks = [], []
    fields: dict[str, str] = {}
    header = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("absorber "):
            header = [int(x) for x in line.split()[1:]]
        elif line.startswith("edge "):
            left, _, right = line[5:].partition(":")
            u, v = (int(x) for x in left.split())
            edges.append(norm_edge(u, v))
            masks.append(to_mask(int(x) for x in right.split()))
        else:
            key, _, value = line.partition(":")
            fields[key.strip()] = value.strip()
    if header is None or len(header) != 3:
        raise GraphError("missing 'absorber m ell h' header")
    m, ell, h = header
    if len(edges) != m:
        raise GraphError(f"header says {m} edges, found {len(edges)}")
    return AbsorberTemplate(
        f_edges=tuple(edges),
        a=frozenset(int(x) for x in fields.get("A", "").split()),
        c=frozenset(int(x) for x in fields.get("C", "").split()),
        ell=ell,
        h=h,
        availability=tuple(masks),
        verified=fields.get("verified", "unverified"),
        seed=int(fields.get("seed", "0")),
        tau=int(fields.get("tau", "1")),
    )


def _perfect(avail: Sequence[int], colors: int, h: int) -> list[int] | None:
    adj = [mask & colors for mask in avail]
    match = max_matching(adj, h)
    return None if UNMATCHED in match else match


def _reachable_edges(avail: Sequence[int], match: Sequence[int], released: Iterable[int], a_mask: int) -> int:
    """Edges reachable from released edges by alternating paths through A.

    A colour entering the matching at such an edge can be pushed along the
    path until a released edge gives up its need; the result is a bitmask.
    """
    owner = {match[i]: i for i in range(len(match))}
    seen = 0
    queue = deque(released)
    for i in queue:
        seen |= 1 << i
    while queue:
        i = queue.popleft()
        for col in bits(avail[i] & a_mask):
            j = owner[col]
            if not seen >> j & 1:
                seen |= 1 << j
                queue.append(j)
    return seen


def build_absorber(
    coll: GraphCollection,
    f_edges: Sequence[Sequence[int]],
    ell: int,
    c_size: int,
    min_avail: int = 1,
    tau: int | None = None,
    samples: int = 50,
    seed: int = 0,
) -> AbsorberTemplate:
    """Build and verify an absorber for ``f_edges`` (see module docstring).

    ``tau`` (default ``ell + 1``) ranks candidate colours: those with at
    least ``tau`` ways to re-enter the matching are tried first.
    """
    edges = [norm_edge(*e) for e in f_edges]
    m, h = len(edges), coll.h
    if len(set(edges)) != m:
        raise AbsorberError("F has repeated edges")
    for u, v in edges:
        if not (0 <= u < coll.n and 0 <= v < coll.n) or u == v:
            raise AbsorberError(f"bad F edge ({u}, {v})")
    if not 0 <= ell <= m:
        raise AbsorberError(f"ell={ell} must lie in [0, {m}]")
    if m > h:
        raise AbsorberError(f"F has {m} edges but only {h} colours exist")
    if m - ell + c_size > h:
        raise AbsorberError(f"|A| + |C| = {m - ell + c_size} exceeds h = {h}")
    if c_size < ell:
        raise AbsorberError(f"c_size={c_size} is smaller than ell={ell}")
    tau = ell + 1 if tau is None else tau
    avail = [coll.availability[u][v] for u, v in edges]
    for (u, v), mask in zip(edges, avail):
        if mask.bit_count() < min_avail:
            raise AbsorberError(
                f"edge ({u}, {v}) has {mask.bit_count()} colours, fewer than {min_avail}"
            )

    match = max_matching(avail, h)
    if UNMATCHED in match:
        left, nbrs = hall_violator(avail, match)
        raise AbsorberError(
            f"no perfect matching: {len(left)} edges see only {nbrs.bit_count()} colours",
            deficient=[edges[i] for i in left],
        )
    # release the colours of the most flexible edges
    released = sorted(range(m), key=lambda i: (-avail[i].bit_count(), i))[:ell]
    a_mask = to_mask(match[i] for i in range(m) if i not in released)
    reach = _reachable_edges(avail, match, released, a_mask)

    union = 0
    for mask in avail:
        union |= mask
    ranked = []
    for col in bits(union & ~a_mask):
        ways = sum(1 for i in bits(reach) if avail[i] >> col & 1)
        if ways or ell == 0:
            ranked.append((ways < tau, -ways, col))
    ranked.sort()

    chosen: list[int] = []
    for _, _, col in ranked:
        if len(chosen) == c_size:
            break
        if ell and comb(len(chosen), ell - 1) <= EXHAUSTIVE_LIMIT:
            ok = all(
                _perfect(avail, a_mask | to_mask(rest) | 1 << col, h) is not None
                for rest in combinations(chosen, ell - 1)
            )
            if not ok:
                continue
        chosen.append(col)
    if len(chosen) < c_size:
        raise AbsorberError(f"only {len(chosen)} resilient colours found, wanted {c_size}")

    c_set = sorted(chosen)
    if comb(len(c_set), ell) <= EXHAUSTIVE_LIMIT:
        family = combinations(c_set, ell)
        verified = "exhaustive"
    else:
        rng = random.Random(seed)
        family = (tuple(sorted(rng.sample(c_set, ell))) for _ in range(samples))
        verified = f"sampled({samples}, {seed})"
    for c_prime in family:
        if _perfect(avail, a_mask | to_mask(c_prime), h) is None:
            raise AbsorberError(f"resilience fails for C' = {sorted(c_prime)}", failing=frozenset(c_prime))

    return AbsorberTemplate(
        f_edges=tuple(edges),
        a=frozenset(bits(a_mask)),
        c=frozenset(c_set),
        ell=ell,
        h=h,
        availability=tuple(avail),
        verified=verified,
        seed=seed,
        tau=tau,
    )


def absorb_colors(tpl: AbsorberTemplate, c_prime: Iterable[int]) -> dict[Edge, int]:
    """Colour every edge of F bijectively with ``A | C'``."""
    c_prime = frozenset(c_prime)
    if not c_prime <= tpl.c:
        raise AbsorberError(f"C' has colours outside C: {sorted(c_prime - tpl.c)}")
    if len(c_prime) != tpl.ell:
        raise AbsorberError(f"|C'| = {len(c_prime)}, expected {tpl.ell}")
    colors = to_mask(tpl.a | c_prime)
    match = _perfect(tpl.availability, colors, tpl.h)
    if match is None:
        raise AbsorberError(f"no perfect matching onto A | C' for C' = {sorted(c_prime)}", failing=c_prime)
    return {e: match[i] for i, e in enumerate(tpl.f_edges)}
