import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import max_subpair_deviation
from transversal.exact import Root, ceil_times, le
from transversal.graph import Graph, GraphError
from transversal import regularity as reg
from transversal.regularity import Verdict


def bipartite(a, b, edges):
    """Pair with A = 0..a-1, B = a..a+b-1; ``edges`` use local B indices."""
    return Graph.from_edges(a + b, [(x, a + y) for x, y in edges]), list(range(a)), list(range(a, a + b))


def random_pair(rng, a, b, p):
    return bipartite(a, b, [(x, y) for x in range(a) for y in range(b) if rng.random() < p])


def planted():
    """A complete to B1 = first four of B, empty to B2 = last four."""
    return bipartite(4, 8, [(x, y) for x in range(4) for y in range(4)])


def hadamard_pair():
    """Nonzero vectors of F_2^4 on both sides, u ~ x iff <u, x> = 1."""
    vecs = list(range(1, 16))
    return bipartite(15, 15, [(i, j) for i, u in enumerate(vecs) for j, x in enumerate(vecs) if bin(u & x).count("1") % 2])


class TestDensity:
    def test_examples(self):
        g, a, b = bipartite(3, 3, [(x, y) for x in range(3) for y in range(3)])
        assert reg.pair_density(g, a, b) == 1
        assert reg.pair_density(Graph.empty(6), a, b) == 0
        assert reg.pair_density(Graph.cycle(6), [0, 2, 4], [1, 3, 5]) == Fraction(2, 3)

    def test_errors(self):
        with pytest.raises(GraphError):
            reg.pair_density(Graph.cycle(6), [0, 1], [1, 2])
        with pytest.raises(GraphError):
            reg.pair_density(Graph.cycle(6), [], [1])

    @given(st.integers(0, 10**6))
    def test_symmetric(self, seed):
        rng = random.Random(seed)
        g, a, b = random_pair(rng, rng.randint(1, 6), rng.randint(1, 6), rng.random())
        assert reg.pair_density(g, a, b) == reg.pair_density(g, b, a)


class TestExactRegularity:
    def test_examples(self):
        g, a, b = bipartite(8, 8, [(x, y) for x in range(8) for y in range(8)])
        assert reg.test_regular_exact(g, a, b, Fraction(1, 10)) == (Verdict.YES, None)
        g, a, b = planted()
        verdict, w = reg.test_regular_exact(g, a, b, Fraction(1, 4))
        assert verdict is Verdict.NO
        assert w.a == set(a) and w.b == set(b[:4]) and w.density == 1
        g, a, b = bipartite(4, 4, [(0, 0)])
        assert reg.test_regular_exact(g, a, b, 1)[0] is Verdict.YES

    def test_size_cap(self):
        g, a, b = bipartite(17, 2, [])
        assert reg.test_regular_exact(g, a, b, Fraction(1, 2)) == (Verdict.UNTESTED, None)

    def test_matches_subset_oracle(self):
        rng = random.Random(4)
        for _ in range(120):
            g, a, b = random_pair(rng, rng.randint(1, 5), rng.randint(1, 5), rng.random())
            eps = Fraction(rng.randint(1, 8), 8)
            d = reg.pair_density(g, a, b)
            worst = max_subpair_deviation(g, a, b, lambda s, m: s >= eps * m, d)
            verdict, w = reg.test_regular_exact(g, a, b, eps)
            assert (verdict is Verdict.YES) == (worst <= eps)
            if w is not None:
                assert len(w.a) >= eps * len(a) and len(w.b) >= eps * len(b)
                assert abs(reg.pair_density(g, w.a, w.b) - d) == worst > eps

    def test_root_epsilon(self):
        g, a, b = planted()
        # deviation 1/2 <= (1/4)^(1/6) ~ 0.79
        assert reg.test_regular_exact(g, a, b, Root(Fraction(1, 4), 6))[0] is Verdict.YES
        assert reg.test_regular_exact(g, a, b, Root(Fraction(1, 5), 2))[0] is Verdict.NO

    def test_slicing(self):
        """(eps, d)-regular implies (eps/alpha, d)-regular on alpha-fractions."""
        rng = random.Random(8)
        checked = 0
        for _ in range(300):
            g, a, b = random_pair(rng, rng.randint(2, 12), rng.randint(2, 12), rng.choice([0.5, 0.8, 0.95]))
            eps = Fraction(rng.randint(1, 5), 10)
            d = reg.pair_density(g, a, b)
            if reg.test_regular_exact(g, a, b, eps)[0] is not Verdict.YES:
                continue
            alpha = Fraction(rng.randint(int(eps * 10) + 1, 10), 10)
            sub_a = rng.sample(a, max(1, ceil_times(alpha, len(a))))
            sub_b = rng.sample(b, max(1, ceil_times(alpha, len(b))))
            assert reg.test_regular_exact(g, sub_a, sub_b, eps / alpha, d)[0] is Verdict.YES
            checked += 1
        assert checked > 30

    def test_adding_tiny_parts(self):
        """Adding at most eps|A| and eps|B| vertices keeps (4 sqrt(eps), d)-regularity.

        At these sizes a non-trivial bound (4 sqrt(eps) < 1) forces
        eps|A| < 1, so nothing is added: the check degenerates to
        monotonicity in epsilon, which is still worth pinning down.
        """
        rng = random.Random(9)
        for _ in range(100):
            g, a, b = random_pair(rng, 6, 6, 0.9)
            eps = Fraction(1, 20)
            d = reg.pair_density(g, a, b)
            if reg.test_regular_exact(g, a, b, eps)[0] is not Verdict.YES:
                continue
            assert reg.test_regular_exact(g, a, b, Root(16 * eps, 2), d)[0] is Verdict.YES

    def test_union_of_regular_pairs(self):
        """(A, B_i) all (eps, d+)-regular gives (A, B_1 | B_2) (eps^(1/3), d+)-regular."""
        rng = random.Random(10)
        checked = 0
        for _ in range(300):
            g, a, b = random_pair(rng, 6, 8, rng.choice([0.8, 0.95, 1.0]))
            b1, b2 = b[:4], b[4:]
            eps, d = Fraction(1, 4), Fraction(1, 2)
            if not all(reg.test_regular_plus(g, a, part, eps, d) is Verdict.YES for part in (b1, b2)):
                continue
            assert reg.test_regular_plus(g, a, b, Root(eps, 3), d) is Verdict.YES
            checked += 1
        assert checked > 10


class TestQuasiRandom:
    def test_examples(self):
        g, a, b = bipartite(5, 5, [(x, y) for x in range(5) for y in range(5)])
        assert reg.test_quasi_random(g, a, b, Fraction(1, 10), 1) == (True, None)
        assert reg.test_quasi_random(Graph.empty(10), a, b, Fraction(1, 10), 0) == (True, None)
        g, a, b = planted()
        ok, w = reg.test_quasi_random(g, a, b, Fraction(1, 4), Fraction(1, 2))
        assert not ok and w.kind == "codegree" and w.side == "B" and set(w.vertices) <= set(b[:4])

    def test_hadamard_pair_is_quasi_random(self):
        g, a, b = hadamard_pair()
        p = Fraction(8, 15)
        assert reg.quasi_random_epsilon(g, a, b, p) == Fraction(1, 16)
        assert reg.test_quasi_random(g, a, b, Fraction(1, 16), p)[0]
        assert not reg.test_quasi_random(g, a, b, Fraction(1, 17), p)[0]

    def test_implies_super_regular(self):
        rng = random.Random(1)
        pairs = [hadamard_pair()]
        for _ in range(150):
            pairs.append(random_pair(rng, rng.randint(2, 9), rng.randint(2, 9), rng.choice([0.5, 0.8, 0.95])))
        checked = 0
        for g, a, b in pairs:
            p = reg.pair_density(g, a, b)
            eps = reg.quasi_random_epsilon(g, a, b, p)
            if eps is None or eps > 1:
                continue
            sixth = Root(eps, 6)
            assert reg.test_regular_exact(g, a, b, sixth, p)[0] is Verdict.YES
            assert reg.super_regular_core(g, a, b, sixth, p) == (frozenset(a), frozenset(b))
            checked += 1
        assert checked > 50

    def test_random_subsets_inherit(self):
        rng = random.Random(5)
        g, a, b = random_pair(rng, 16, 16, 0.9)
        p = reg.pair_density(g, a, b)
        eps = reg.quasi_random_epsilon(g, a, b, p)
        for seed in range(100):
            r = random.Random(seed)
            sub = reg.quasi_random_epsilon(g, r.sample(a, 8), r.sample(b, 8), p)
            assert sub is not None and le(sub, Root(eps, 10))


class TestSuperRegular:
    def test_examples(self):
        g, a, b = bipartite(4, 4, [(x, y) for x in range(4) for y in range(4)])
        assert reg.super_regular_core(g, a, b, Fraction(1, 10), 1) == (frozenset(a), frozenset(b))
        g, a, b = bipartite(4, 4, [(x, y) for x in range(1, 4) for y in range(4)])
        core = reg.super_regular_core(g, a, b, Fraction(1, 10), Fraction(1, 2))
        assert core is not None and core[0] == set(a) - {0}
        assert reg.super_regular_core(Graph.empty(8), a, b, Fraction(1, 10), Fraction(1, 2)) is None

    def test_large_core_of_regular_pairs(self):
        rng = random.Random(2)
        checked = 0
        for _ in range(300):
            g, a, b = random_pair(rng, rng.randint(2, 9), rng.randint(2, 9), rng.choice([0.6, 0.8, 0.9]))
            d = reg.pair_density(g, a, b)
            for eps in (Fraction(1, 10), Fraction(1, 5), Fraction(1, 4), Fraction(1, 3)):
                if reg.test_regular_exact(g, a, b, eps)[0] is not Verdict.YES:
                    continue
                core = reg.super_regular_core(g, a, b, eps, d)
                assert core is not None
                assert len(core[0]) >= (1 - eps) * len(a) and len(core[1]) >= (1 - eps) * len(b)
                assert reg.test_super_regular(g, core[0], core[1], 2 * eps, d) is Verdict.YES
                checked += 1
        assert checked > 50


class TestTypicalPairs:
    def brute(self, g, parts, eps, d, i, j):
        s = Root(eps, 2)
        out = []
        for u in parts[i]:
            for v in parts[j]:
                good = le((d - Fraction(sum(g.has_edge(u, w) for w in parts[j]), len(parts[j]))) / 4, s)
                good &= le((d - Fraction(sum(g.has_edge(v, w) for w in parts[i]), len(parts[i]))) / 4, s)
                for m, part in enumerate(parts):
                    if m in (i, j):
                        continue
                    common = sum(g.has_edge(u, w) and g.has_edge(v, w) for w in part)
                    good &= le((d * d - Fraction(common, len(part))) / 4, s)
                if good:
                    out.append((u, v))
        return out

    def test_complete_parts(self):
        g = Graph.complete_multipartite([3, 3, 3])
        parts = [range(0, 3), range(3, 6), range(6, 9)]
        got = reg.typical_pairs(g, parts, Fraction(1, 100), Fraction(1, 2))
        assert got == list(itertools.product(range(3), range(3, 6)))

    def test_isolated_vertex_excluded(self):
        g = Graph.complete_multipartite([3, 3])
        g = Graph.from_edges(6, [e for e in g.edges() if 0 not in e])
        got = reg.typical_pairs(g, [range(3), range(3, 6)], Fraction(1, 1000), Fraction(1, 2))
        assert got and all(u != 0 for u, _ in got)

    def test_random_tripartite_against_filter(self):
        rng = random.Random(13)
        m = 6
        g = Graph.from_edges(
            3 * m, [(u, v) for u, v in itertools.combinations(range(3 * m), 2) if u // m != v // m and rng.random() < 0.8]
        )
        parts = [list(range(m * i, m * i + m)) for i in range(3)]
        eps, d = Fraction(1, 100), Fraction(7, 10)
        assert reg.typical_pairs(g, parts, eps, d) == self.brute(g, parts, eps, d, 0, 1)
        assert reg.typical_pairs(g, parts, eps, d, 2, 1) == self.brute(g, parts, eps, d, 2, 1)

    def test_overlap_rejected(self):
        with pytest.raises(GraphError):
            reg.typical_pairs(Graph.complete(4), [[0, 1], [1, 2]], Fraction(1, 10), Fraction(1, 2))


def test_report_text():
    g, a, b = planted()
    text = reg.pair_report(g, a, b, Fraction(1, 4), Fraction(1, 2)).to_text()
    fields = dict(line.split(": ", 1) for line in text.strip().splitlines())
    assert fields["density"] == "1/2"
    assert fields["exact_regular"] == "no"
    assert fields["quasi_random"] == "no"
    assert fields["degree_histogram_b"] == "0:4 4:4"
    assert fields["witness_b"] == "4 5 6 7"


def test_huge_epsilon_is_vacuous():
    g, a, b = planted()
    assert reg.test_regular_exact(g, a, b, Fraction(5, 4)) == (Verdict.YES, None)
    assert reg.test_regular_plus(g, a, b, Fraction(5, 4), 1) is Verdict.YES
