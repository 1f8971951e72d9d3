import itertools
import random

import pytest
from hypothesis import given, strategies as st

from oracles import bandwidth, chromatic_number, random_bounded_degree, random_graph
from transversal.bandwidth import (
    BandwidthOrdering,
    BandwidthPartition,
    FragmentedIntervals,
    InsufficientRoom,
    ProperColoring,
    bandwidth_partition,
    build_fragmented,
    chromatic_coloring,
    compute_ordering,
    proper_coloring,
    stretch,
    verify_admission,
)
from transversal.graph import Graph, GraphError


def independent_stretch(g, order):
    pos = {v: i for i, v in enumerate(order)}
    return max((abs(pos[u] - pos[v]) for u, v in g.edges()), default=0)


class TestOrdering:
    def test_examples(self):
        p5 = compute_ordering(Graph.path(5))
        assert p5.b == 1
        assert compute_ordering(Graph.cycle(6)).b == 2
        for mode in ("exact", "heuristic"):
            assert compute_ordering(Graph.complete(4), mode).b == 3

    def test_exact_size_cap(self):
        with pytest.raises(GraphError):
            compute_ordering(Graph.path(21).induced(range(21)) if False else Graph.complete(21), "exact")

    def test_exact_matches_permutation_oracle(self):
        rng = random.Random(7)
        for _ in range(200):
            n = rng.randint(1, 8)
            g = random_graph(rng, n, rng.random())
            assert compute_ordering(g).b == bandwidth(g)

    def test_heuristic_reports_true_stretch(self):
        rng = random.Random(8)
        for _ in range(100):
            g = random_bounded_degree(rng, rng.randint(1, 40), 4)
            o = compute_ordering(g, "heuristic", seed=rng.randint(0, 99))
            assert sorted(o.order) == list(range(g.n))
            assert o.b == independent_stretch(g, o.order) == stretch(g, o.order)

    def test_heuristic_is_deterministic(self):
        g = random_bounded_degree(random.Random(3), 30, 3)
        assert compute_ordering(g, "heuristic", seed=4) == compute_ordering(g, "heuristic", seed=4)

    def test_exact_twenty_vertices(self):
        rng = random.Random(9)
        for _ in range(5):
            g = random_graph(rng, 20, 0.15)
            o = compute_ordering(g)
            assert o.b == independent_stretch(g, o.order)


class TestColoring:
    def test_examples(self):
        c = proper_coloring(Graph.cycle(6), 2)
        assert c is not None and c.is_proper(Graph.cycle(6))
        assert proper_coloring(Graph.cycle(5), 2) is None
        c52 = Graph.cycle_power(5, 2)
        assert proper_coloring(c52, 3) is None
        assert proper_coloring(c52, 5) is not None

    def test_chromatic_matches_oracle(self):
        rng = random.Random(4)
        for _ in range(80):
            g = random_graph(rng, rng.randint(1, 6), rng.random())
            c = chromatic_coloring(g)
            assert c.is_proper(g)
            assert len(set(c.color)) == chromatic_number(g)


class TestPartition:
    def test_path_example(self):
        g = Graph.path(6)
        c = ProperColoring(tuple(2 - (v + 1) % 2 for v in range(6)), 2)  # c(x_l) = l mod 2 in {1, 2}
        part = bandwidth_partition(g, BandwidthOrdering.of(g, range(6)), c, 1)
        assert part.r == 6
        assert part.blocks == tuple(frozenset({i}) for i in range(6))

    def test_edgeless_k1(self):
        g = Graph.empty(4)
        part = bandwidth_partition(g, BandwidthOrdering.of(g, range(4)), ProperColoring((1,) * 4, 1), 4)
        assert part.r == 1 and part.blocks == (frozenset(range(4)),)

    def test_cycle_with_snake_order(self):
        g = Graph.cycle(6)
        order = BandwidthOrdering.of(g, (0, 1, 5, 2, 4, 3))
        c = ProperColoring(tuple(v % 2 + 1 for v in range(6)), 2)
        part = bandwidth_partition(g, order, c, 2)
        assert verify_admission(g, part) == (True, None)
        assert all(len(w) <= 4 for w in part.blocks)

    def test_identity_order_of_cycle_too_wide(self):
        g = Graph.cycle(6)
        c = ProperColoring(tuple(v % 2 + 1 for v in range(6)), 2)
        with pytest.raises(GraphError):
            bandwidth_partition(g, BandwidthOrdering.of(g, range(6)), c, 2)

    def test_verify_admission_witnesses(self):
        g = Graph.path(3)
        inside = BandwidthPartition((frozenset({0, 1}), frozenset({2})), 2, 2)
        assert verify_admission(g, inside) == (False, (0, 1))
        far = BandwidthPartition((frozenset({0}), frozenset(), frozenset({1, 2}) - {2}, frozenset({2})), 2, 1)
        ok, edge = verify_admission(g, far)
        assert not ok and edge in {(0, 1), (1, 2)}
        with pytest.raises(GraphError):
            verify_admission(g, BandwidthPartition((frozenset({0}),), 2, 1))

    def test_random_partitions(self):
        rng = random.Random(12)
        for _ in range(100):
            g = random_bounded_degree(rng, rng.randint(1, 40), 4)
            order = compute_ordering(g, "exact" if g.n <= 12 else "heuristic")
            c = chromatic_coloring(g)
            alpha_n = order.b + rng.randint(0, 3) or 1
            part = bandwidth_partition(g, order, c, alpha_n)
            assert verify_admission(g, part) == (True, None)
            assert part.r % c.k == 0
            assert all(len(w) <= c.k * alpha_n for w in part.blocks)
            assert sorted(v for w in part.blocks for v in w) == list(range(g.n))


class TestFragmented:
    def test_examples(self):
        part = BandwidthPartition(tuple(frozenset() for _ in range(20)), 1, 1)
        assert build_fragmented(part, 2, 3).intervals == ((1, 2), (5, 6), (9, 10))
        small = BandwidthPartition(tuple(frozenset() for _ in range(5)), 1, 1)
        with pytest.raises(InsufficientRoom) as err:
            build_fragmented(small, 2, 2)
        assert err.value.max_p == 1
        four = BandwidthPartition(tuple(frozenset() for _ in range(4)), 1, 1)
        assert build_fragmented(four, 1, 1).intervals == ((1, 1),)

    @given(st.integers(1, 60), st.integers(1, 6), st.integers(1, 10), st.one_of(st.none(), st.integers(1, 60)))
    def test_invariants_or_room_error(self, r, ell, p, bound):
        part = BandwidthPartition(tuple(frozenset() for _ in range(r)), 1, 1)
        try:
            fi = build_fragmented(part, ell, p, bound)
        except InsufficientRoom as exc:
            assert exc.max_p < p
            if exc.max_p:
                build_fragmented(part, ell, exc.max_p, bound)
            return
        assert len(fi.intervals) == p
        for a, b in fi.intervals:
            assert b - a == ell - 1
            assert 1 <= a and b <= min(r, bound or r)
        for (_, b), (a, _) in zip(fi.intervals, fi.intervals[1:]):
            assert a - b >= ell + 1

    def test_rejects_bad_collections(self):
        with pytest.raises(GraphError):
            FragmentedIntervals(((1, 3),), 2)
        with pytest.raises(GraphError):
            FragmentedIntervals(((1, 2), (3, 4)), 2)
