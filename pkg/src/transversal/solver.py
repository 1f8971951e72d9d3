"""Exact search for transversal embeddings.

A transversal copy of H in a collection (G_0, ..., G_{h-1}) is an injective
map phi of V(H) into the host vertices together with an injective colouring
lambda of E(H) such that phi(x)phi(y) lies in layer lambda(xy).

The search places the vertices of H one at a time (bandwidth order by
default).  A host vertex is a candidate for x only if, for every placed
neighbour y, the pair phi(y)v lies in some layer.  The H-edges closed so far
are kept maximally matched to colours; whenever a new edge cannot be
matched, no completion exists below this node and we backtrack.
"""

from __future__ import annotations

import enum
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Sequence

from .bandwidth import BudgetExhausted, compute_ordering
from .graph import Edge, Graph, GraphCollection, GraphError, bits, norm_edge
from .matching import UNMATCHED, IncrementalMatching, hall_violator, max_matching

ORDERS = ("bandwidth", "degree", "given")
PRUNE_LEVELS = ("hall", "hall+codegree")
SYMMETRY_MAX_VERTICES = 64


class Outcome(str, enum.Enum):
    FOUND = "found"
    NOT_FOUND = "not-found"
    BUDGET_EXHAUSTED = "budget-exhausted"


@dataclass(frozen=True)
class SearchConfig:
    vertex_order: str = "bandwidth"
    order: tuple[int, ...] | None = None  # used when vertex_order == "given"
    node_budget: int = 10_000_000
    time_budget_ms: int | None = None
    seed: int = 0
    prune_level: str = "hall+codegree"
    incremental: bool = True  # False recomputes the matching at every node
    symmetry: bool = True

    def __post_init__(self):
        if self.vertex_order not in ORDERS:
            raise ValueError(f"vertex_order must be one of {ORDERS}")
        if self.prune_level not in PRUNE_LEVELS:
            raise ValueError(f"prune_level must be one of {PRUNE_LEVELS}")
        if self.node_budget <= 0:
            raise ValueError("node_budget must be positive")
        if self.time_budget_ms is not None and self.time_budget_ms <= 0:
            raise ValueError("time_budget_ms must be positive")
        if self.vertex_order == "given" and self.order is None:
            raise ValueError("vertex_order 'given' needs an explicit order")


@dataclass
class SearchStats:
    nodes: int = 0
    hall_prunes: int = 0
    forward_prunes: int = 0
    matching_recomputes: int = 0
    elapsed_ms: float = 0.0

    def to_text(self) -> str:
        return (
            f"nodes: {self.nodes}\nhall_prunes: {self.hall_prunes}\n"
            f"forward_prunes: {self.forward_prunes}\n"
            f"matching_recomputes: {self.matching_recomputes}\n"
            f"elapsed_ms: {self.elapsed_ms:.1f}\n"
        )


@dataclass(frozen=True)
class TransversalEmbedding:
    phi: tuple[int, ...]  # phi[x] is the host vertex of x
    lam: dict[Edge, int] = field(hash=False)
    partial: bool = False

    def to_text(self) -> str:
        phi = ", ".join(f"{x}→{v}" for x, v in enumerate(self.phi))
        lam = ", ".join(f"{u}-{v}→{c}" for (u, v), c in sorted(self.lam.items()))
        out = f"phi: {phi}\nlambda: {lam}\n"
        if self.partial:
            out += "partial-transversal: yes\n"
        return out


def parse_embedding(text: str) -> TransversalEmbedding:
    phi: dict[int, int] = {}
    lam: dict[Edge, int] = {}
    partial = False
    for raw in text.splitlines():
        key, _, value = raw.partition(":")
        key = key.strip()
        items = [s.strip() for s in value.split(",") if s.strip()]
        if key == "phi":
            for item in items:
                a, b = item.split("→")
                phi[int(a)] = int(b)
        elif key == "lambda":
            for item in items:
                a, b = item.split("→")
                u, v = a.split("-")
                lam[norm_edge(int(u), int(v))] = int(b)
        elif key == "partial-transversal":
            partial = value.strip() == "yes"
    if sorted(phi) != list(range(len(phi))):
        raise GraphError("phi must list the vertices 0..k-1")
    return TransversalEmbedding(tuple(phi[x] for x in range(len(phi))), lam, partial)


@dataclass
class SearchResult:
    outcome: Outcome
    embedding: TransversalEmbedding | None
    stats: SearchStats
    seed: int = 0

    @property
    def found(self) -> bool:
        return self.outcome is Outcome.FOUND


# -- vertex orders and symmetry ---------------------------------------------

def degree_order(g: Graph) -> tuple[int, ...]:
    """Greedy order: next vertex has most placed neighbours, then highest degree."""
    placed: list[int] = []
    left = set(range(g.n))
    mask = 0
    while left:
        x = min(left, key=lambda v: (-(g.rows[v] & mask).bit_count(), -g.degree(v), v))
        placed.append(x)
        left.discard(x)
        mask |= 1 << x
    return tuple(placed)


def vertex_order(h: Graph, cfg: SearchConfig) -> tuple[int, ...]:
    if cfg.vertex_order == "given":
        order = tuple(cfg.order)
        if sorted(order) != list(range(h.n)):
            raise GraphError("given order is not a permutation of V(H)")
        return order
    if cfg.vertex_order == "degree":
        return degree_order(h)
    try:
        return compute_ordering(h, "exact").order
    except BudgetExhausted:
        return compute_ordering(h, "heuristic").order


def orbit_representatives(g: Graph) -> list[int]:
    """Least vertex of every orbit of Aut(g), in ascending order."""
    import networkx as nx
    from networkx.algorithms.isomorphism import GraphMatcher

    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    base = nx.Graph()
    base.add_nodes_from(range(g.n))
    base.add_edges_from(g.edges())
    for v in range(g.n):
        for u in range(v):
            if find(u) == find(v) or g.degree(u) != g.degree(v):
                continue
            left, right = base.copy(), base.copy()
            nx.set_node_attributes(left, {x: x == u for x in range(g.n)}, "mark")
            nx.set_node_attributes(right, {x: x == v for x in range(g.n)}, "mark")
            gm = GraphMatcher(left, right, node_match=lambda a, b: a["mark"] == b["mark"])
            sigma = next(gm.isomorphisms_iter(), None)
            if sigma is not None:
                for x, y in sigma.items():
                    parent[find(x)] = find(y)
    reps: dict[int, int] = {}
    for x in range(g.n):
        r = find(x)
        reps[r] = min(reps.get(r, x), x)
    return sorted(reps.values())


# -- search -----------------------------------------------------------------

class _Budget(Exception):
    pass


def find_transversal(
    coll: GraphCollection, h: Graph, cfg: SearchConfig | None = None
) -> SearchResult:
    """Search for a transversal copy of ``h``; see the module docstring.

    ``e(H) < h`` is allowed and yields a partial transversal (lambda
    injective).  Exhausting a budget gives ``BUDGET_EXHAUSTED``, which is
    never conflated with ``NOT_FOUND``.
    """
    cfg = cfg or SearchConfig()
    m, ncol, n = h.num_edges, coll.h, coll.n
    if m > ncol:
        raise GraphError(f"H has {m} edges but the collection has only {ncol} colours")
    stats = SearchStats()
    start = time.perf_counter()

    def done(outcome: Outcome, emb: TransversalEmbedding | None = None) -> SearchResult:
        stats.elapsed_ms = (time.perf_counter() - start) * 1000
        return SearchResult(outcome, emb, stats, cfg.seed)

    if h.n > n:
        return done(Outcome.NOT_FOUND)
    order = vertex_order(h, cfg)
    pos = [0] * h.n
    for p, x in enumerate(order):
        pos[x] = p
    back = [sorted((y for y in h.neighbors(x) if pos[y] < p), key=pos.__getitem__) for p, x in enumerate(order)]
    closed = [(y, order[p]) for p in range(h.n) for y in back[p]]
    # frontier[p]: unplaced vertices with a placed neighbour once position p is filled
    frontier = []
    for p in range(h.n):
        row = []
        for z in order[p + 1:]:
            nb = [y for y in h.neighbors(z) if pos[y] <= p]
            if nb:
                row.append(nb)
        frontier.append(row)
    forward = cfg.prune_level == "hall+codegree"

    avail = coll.availability
    union = coll.union_rows
    full = (1 << n) - 1
    if cfg.seed:
        rank = list(range(n))
        random.Random(cfg.seed).shuffle(rank)
    else:
        rank = None
    roots = full
    if cfg.symmetry and coll.all_layers_equal and n <= SYMMETRY_MAX_VERTICES and h.n:
        roots = 0
        for v in orbit_representatives(coll.layers[0]):
            roots |= 1 << v

    phi = [-1] * h.n
    matching = IncrementalMatching(ncol)
    masks: list[int] = []  # colour masks of closed edges, for the recompute mode
    deadline = None if cfg.time_budget_ms is None else start + cfg.time_budget_ms / 1000
    used = 0

    def tick() -> None:
        stats.nodes += 1
        if stats.nodes > cfg.node_budget:
            raise _Budget
        if deadline is not None and stats.nodes % 256 == 0 and time.perf_counter() > deadline:
            raise _Budget

    def frontier_ok(p: int) -> bool:
        free = full & ~used
        for nb in frontier[p]:
            cand = free
            for y in nb:
                cand &= union[phi[y]]
            if not cand:
                return False
        return True

    def extend(p: int) -> bool:
        nonlocal used
        if p == h.n:
            return True
        x = order[p]
        nb = back[p]
        cand = full & ~used
        for y in nb:
            cand &= union[phi[y]]
        if p == 0:
            cand &= roots
        cands = list(bits(cand))
        if rank is not None:
            cands.sort(key=rank.__getitem__)
        for v in cands:
            tick()
            new = [avail[phi[y]][v] for y in nb]
            if cfg.incremental:
                snap = matching.snapshot()
                ok = all(matching.add(mask) for mask in new)
                stats.matching_recomputes += len(new)
            else:
                masks.extend(new)
                ok = UNMATCHED not in max_matching(masks, ncol)
                stats.matching_recomputes += 1
            if not ok:
                stats.hall_prunes += 1
            else:
                phi[x] = v
                used |= 1 << v
                if forward and not frontier_ok(p):
                    stats.forward_prunes += 1
                elif extend(p + 1):
                    return True
                phi[x] = -1
                used &= ~(1 << v)
            if cfg.incremental:
                matching.restore(snap)
            else:
                del masks[len(masks) - len(new):]
        return False

    try:
        success = extend(0)
    except _Budget:
        return done(Outcome.BUDGET_EXHAUSTED)
    if not success:
        return done(Outcome.NOT_FOUND)
    colors = matching.match_l if cfg.incremental else max_matching(masks, ncol)
    lam = {norm_edge(y, x): colors[i] for i, (y, x) in enumerate(closed)}
    return done(Outcome.FOUND, TransversalEmbedding(tuple(phi), lam, partial=m < ncol))


def _run(args) -> SearchResult:
    coll, h, cfg = args
    return find_transversal(coll, h, cfg)


def find_transversal_portfolio(
    coll: GraphCollection, h: Graph, cfg: SearchConfig, seeds: Sequence[int], workers: int = 1
) -> SearchResult:
    """Run one search per seed and report the lowest-seed success.

    A single ``NOT_FOUND`` is conclusive (every search is exhaustive), so
    it wins over budget exhaustion of the other seeds.
    """
    jobs = [(coll, h, replace(cfg, seed=s)) for s in sorted(seeds)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_run, jobs))
    else:
        results = [_run(j) for j in jobs]
    for outcome in (Outcome.FOUND, Outcome.NOT_FOUND):
        for r in results:
            if r.outcome is outcome:
                return r
    return results[0]


# -- validation (independent of the search) ----------------------------------

def verify_transversal(
    coll: GraphCollection, h: Graph, emb: TransversalEmbedding
) -> tuple[bool, str | None]:
    """Check an embedding against the definition; returns (ok, first problem)."""
    phi = emb.phi
    if len(phi) != h.n:
        return False, f"phi has {len(phi)} entries, H has {h.n} vertices"
    for x, v in enumerate(phi):
        if not 0 <= v < coll.n:
            return False, f"phi({x}) = {v} is not a host vertex"
    seen: dict[int, int] = {}
    for x, v in enumerate(phi):
        if v in seen:
            return False, f"phi not injective: {seen[v]} and {x} both map to {v}"
        seen[v] = x
    h_edges = set(h.edges())
    lam_edges = {tuple(sorted(e)) for e in emb.lam}
    if lam_edges != h_edges or len(emb.lam) != len(h_edges):
        missing = sorted(h_edges - lam_edges)
        extra = sorted(lam_edges - h_edges)
        return False, f"lambda domain mismatch: missing {missing}, extra {extra}"
    owner: dict[int, tuple] = {}
    for e, c in sorted(emb.lam.items()):
        if not 0 <= c < coll.h:
            return False, f"lambda{e} = {c} is not a colour"
        if c in owner:
            return False, f"colour collision: {owner[c]} and {e} both get colour {c}"
        owner[c] = e
    if len(h_edges) == coll.h and len(owner) != coll.h:
        return False, "lambda is not onto the colours"
    for (x, y), c in sorted(emb.lam.items()):
        if not coll.layers[c].has_edge(phi[x], phi[y]):
            return False, f"H-edge {(x, y)}: host pair {(phi[x], phi[y])} is not in layer {c}"
    return True, None


# -- rainbow colouring of a fixed edge set ------------------------------------

@dataclass(frozen=True)
class RainbowColoring:
    assignment: dict[Edge, int] | None
    deficient: tuple[Edge, ...] = ()
    colors: frozenset[int] = frozenset()

    @property
    def found(self) -> bool:
        return self.assignment is not None


def find_rainbow_coloring(coll: GraphCollection, edges: Sequence[Sequence[int]]) -> RainbowColoring:
    """Injective colouring of host edges by maximum matching.

    On failure returns a Hall certificate: edges whose joint colour set is
    smaller than their number.
    """
    es = [norm_edge(*e) for e in edges]
    if len(set(es)) != len(es):
        raise GraphError("edges must be distinct")
    for u, v in es:
        if u == v or not (0 <= u < coll.n and 0 <= v < coll.n):
            raise GraphError(f"bad host edge ({u}, {v})")
    adj = [coll.availability[u][v] for u, v in es]
    match = max_matching(adj, coll.h)
    if UNMATCHED not in match:
        return RainbowColoring({e: match[i] for i, e in enumerate(es)})
    left, nbrs = hall_violator(adj, match)
    return RainbowColoring(None, tuple(es[i] for i in left), frozenset(bits(nbrs)))
