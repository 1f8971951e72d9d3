"""Seeded instance generators and extremal constructions."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .bandwidth import (
    BandwidthOrdering,
    BudgetExhausted,
    EXACT_MAX_VERTICES,
    ProperColoring,
    chromatic_coloring,
    compute_ordering,
)
from .exact import as_fraction
from .graph import Graph, GraphCollection, GraphError, bits, min_degree

MODELS = ("iid", "mindeg", "identical", "extremal")
FAMILIES = ("hamilton_cycle", "power_of_cycle", "kk_factor", "random_bounded", "path", "tree")
EXTREMAL_KINDS = ("dirac-hamilton", "kpartite-factor", "space-barrier-triangle")


def min_degree_target(n: int, delta_frac) -> int:
    """``ceil(delta_frac * n)``, exactly."""
    d = as_fraction(delta_frac)
    return -(-d.numerator * n // d.denominator)


@dataclass(frozen=True)
class InstanceSpec:
    n: int
    h: int
    model: str = "mindeg"
    p: Fraction = Fraction(1, 2)  # iid edge probability
    delta_frac: Fraction = Fraction(1, 2)  # mindeg target
    margin: Fraction = Fraction(0)  # mindeg starts from G(n, delta_frac + margin)
    graph: Graph | None = None  # identical model
    kind: str = "dirac-hamilton"  # extremal model
    k: int = 3
    seed: int = 0

    def __post_init__(self):
        if self.model not in MODELS:
            raise GraphError(f"model must be one of {MODELS}")
        if self.n < 1 or self.h < 1:
            raise GraphError("n and h must be positive")
        if not 0 <= as_fraction(self.delta_frac) <= 1:
            raise GraphError("delta_frac must lie in [0, 1]")
        if not 0 <= as_fraction(self.p) <= 1:
            raise GraphError("p must lie in [0, 1]")


def _random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return Graph.from_edges(n, [e for e in combinations(range(n), 2) if rng.random() < p])


def _repair(g: Graph, target: int, rng: random.Random) -> Graph:
    """Add random edges at deficient vertices until the minimum degree is ``target``."""
    rows = list(g.rows)
    full = (1 << g.n) - 1
    for v in range(g.n):
        while rows[v].bit_count() < target:
            choices = list(bits(full & ~rows[v] & ~(1 << v)))
            u = rng.choice(choices)
            rows[v] |= 1 << u
            rows[u] |= 1 << v
    return Graph(g.n, tuple(rows))


def gen_collection(spec: InstanceSpec) -> GraphCollection:
    """Deterministic collection for ``spec``; the same seed gives the same layers."""
    n, h = spec.n, spec.h
    rng = random.Random(spec.seed)
    if spec.model == "iid":
        p = float(as_fraction(spec.p))
        return GraphCollection(n, [_random_graph(n, p, rng) for _ in range(h)])
    if spec.model == "mindeg":
        target = min_degree_target(n, spec.delta_frac)
        if as_fraction(spec.delta_frac) == 1:
            target = n - 1  # delta_frac = 1 asks for complete layers
        if target > n - 1:
            raise GraphError(f"delta_frac={spec.delta_frac} needs degree {target} > n-1 = {n - 1}")
        p = float(min(Fraction(1), as_fraction(spec.delta_frac) + as_fraction(spec.margin)))
        layers = [_repair(_random_graph(n, p, rng), target, rng) for _ in range(h)]
        return GraphCollection(n, layers)
    if spec.model == "identical":
        if spec.graph is None or spec.graph.n != n:
            raise GraphError("identical model needs a graph on n vertices")
        return GraphCollection.identical(spec.graph, h)
    inst = extremal_instance(spec.kind, n, spec.k)
    if inst.collection.h != h:
        raise GraphError(f"extremal {spec.kind} at n={n} has h={inst.collection.h}, not {h}")
    return inst.collection


# -- targets ----------------------------------------------------------------

@dataclass(frozen=True)
class TargetSpec:
    family: str
    n: int
    k: int = 2  # power for power_of_cycle, clique size for kk_factor
    max_degree: int = 3  # random_bounded and tree
    b: int = 2  # random_bounded bandwidth
    seed: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise GraphError(f"family must be one of {FAMILIES}")
        if self.n < 1:
            raise GraphError("n must be positive")


@dataclass(frozen=True)
class Target:
    graph: Graph
    ordering: BandwidthOrdering
    coloring: ProperColoring

    @property
    def chi(self) -> int:
        return len(set(self.coloring.color))


def _ordering(g: Graph) -> BandwidthOrdering:
    if g.n <= EXACT_MAX_VERTICES:
        try:
            return compute_ordering(g, "exact")
        except BudgetExhausted:
            pass
    return compute_ordering(g, "heuristic")


def gen_target(spec: TargetSpec) -> Target:
    """Target graph plus a witness bandwidth ordering and proper colouring."""
    n, k = spec.n, spec.k
    rng = random.Random(spec.seed)
    order = None
    coloring = None
    if spec.family == "hamilton_cycle":
        g = Graph.cycle(n)
    elif spec.family == "power_of_cycle":
        if k < 1 or n < 2 * k + 1:
            raise GraphError(f"the {k}-th power of C_n needs n >= {2 * k + 1}")
        g = Graph.cycle_power(n, k)
    elif spec.family == "kk_factor":
        if k < 1 or n % k:
            raise GraphError(f"k={k} does not divide n={n}")
        g = Graph.from_edges(
            n, [(s + i, s + j) for s in range(0, n, k) for i, j in combinations(range(k), 2)]
        )
        order = tuple(range(n))
        coloring = ProperColoring(tuple(v % k + 1 for v in range(n)), k)
    elif spec.family == "path":
        g = Graph.path(n)
        order = tuple(range(n))
        coloring = ProperColoring(tuple(v % 2 + 1 for v in range(n)), min(2, n))
    elif spec.family == "random_bounded":
        if spec.max_degree < 1 or spec.b < 1:
            raise GraphError("random_bounded needs max_degree >= 1 and b >= 1")
        deg = [0] * n
        edges = []
        for i, j in combinations(range(n), 2):
            if j - i <= spec.b and deg[i] < spec.max_degree and deg[j] < spec.max_degree and rng.random() < 0.5:
                edges.append((i, j))
                deg[i] += 1
                deg[j] += 1
        g = Graph.from_edges(n, edges)
        order = tuple(range(n))
    else:  # tree
        if spec.max_degree < 2 and n > 2:
            raise GraphError("a tree on more than 2 vertices needs max_degree >= 2")
        deg = [0] * n
        edges = []
        for v in range(1, n):
            u = rng.choice([w for w in range(v) if deg[w] < spec.max_degree])
            edges.append((u, v))
            deg[u] += 1
            deg[v] += 1
        g = Graph.from_edges(n, edges)
    ordering = BandwidthOrdering.of(g, order) if order is not None else _ordering(g)
    if coloring is None:
        coloring = chromatic_coloring(g)
    tgt = Target(g, ordering, coloring)
    check_target(spec, tgt)
    return tgt


def check_target(spec: TargetSpec, tgt: Target) -> None:
    """Raise if a generated target breaks its family's declared bounds."""
    g = tgt.graph
    if not tgt.coloring.is_proper(g):
        raise GraphError("witness colouring is not proper")
    if BandwidthOrdering.of(g, tgt.ordering.order).b != tgt.ordering.b:
        raise GraphError("declared bandwidth does not match the ordering")
    limits = {
        "hamilton_cycle": 2,
        "path": 2,
        "power_of_cycle": 2 * spec.k,
        "kk_factor": spec.k - 1,
        "random_bounded": spec.max_degree,
        "tree": spec.max_degree,
    }
    if g.max_degree > limits[spec.family]:
        raise GraphError(f"maximum degree {g.max_degree} exceeds {limits[spec.family]}")
    if spec.family == "random_bounded" and tgt.ordering.b > spec.b:
        raise GraphError(f"bandwidth {tgt.ordering.b} exceeds {spec.b}")
    if spec.family == "kk_factor" and tgt.ordering.b != spec.k - 1:
        raise GraphError("block ordering of a K_k-factor must have bandwidth k-1")


# -- extremal constructions ---------------------------------------------------

@dataclass(frozen=True)
class ExtremalInstance:
    kind: str
    collection: GraphCollection
    target: Graph
    target_spec: TargetSpec | None
    note: str


def extremal_instance(kind: str, n: int | None = None, k: int = 3) -> ExtremalInstance:
    """A collection paired with a target it provably does not contain.

    * ``dirac-hamilton``: every layer is K_{ceil(n/2)-1, floor(n/2)+1}, which
      has no Hamilton cycle because its sides are unbalanced.
    * ``kpartite-factor``: every layer is complete k-partite with parts
      n/k+1, n/k, ..., n/k, n/k-1; a K_k-factor would need n/k+1 disjoint
      cliques through the largest (independent) part.
    * ``space-barrier-triangle``: three copies of the path 0-1-2 on three
      vertices; the pair 02 has no colour, so there is no triangle.
    """
    if kind == "dirac-hamilton":
        if n is None or n < 4:
            raise GraphError("dirac-hamilton needs n >= 4")
        small = -(-n // 2) - 1
        g = Graph.complete_multipartite([small, n - small])
        spec = TargetSpec("hamilton_cycle", n)
        note = f"K_{{{small},{n - small}}} layers, unbalanced so no Hamilton cycle"
        return ExtremalInstance(kind, GraphCollection.identical(g, n), Graph.cycle(n), spec, note)
    if kind == "kpartite-factor":
        if k < 2 or n is None or n % k or n < k:
            raise GraphError(f"kpartite-factor needs k >= 2 and k | n; got n={n}, k={k}")
        q = n // k
        sizes = [q + 1] + [q] * (k - 2) + [q - 1]
        g = Graph.complete_multipartite(sizes)
        spec = TargetSpec("kk_factor", n, k=k)
        target = gen_target(spec).graph
        note = f"complete {k}-partite layers with parts {sizes}; part of size {q + 1} > n/k"
        return ExtremalInstance(kind, GraphCollection.identical(g, target.num_edges), target, spec, note)
    if kind == "space-barrier-triangle":
        if n not in (None, 3):
            raise GraphError("space-barrier-triangle is defined for n = 3 only")
        g = Graph.path(3)
        note = "three copies of the path 0-1-2; the pair 02 is in no layer"
        return ExtremalInstance(kind, GraphCollection.identical(g, 3), Graph.cycle(3), TargetSpec("hamilton_cycle", 3), note)
    raise GraphError(f"unknown extremal kind {kind!r}; expected one of {EXTREMAL_KINDS}")


def check_min_degree(coll: GraphCollection, delta_frac) -> bool:
    target = min(min_degree_target(coll.n, delta_frac), coll.n - 1)
    return all(min_degree(g) >= target for g in coll.layers)
