import random
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from oracles import perfect_matching_exists, random_collection
from transversal.absorber import AbsorberError, absorb_colors, build_absorber, parse_template
from transversal.graph import Graph, GraphCollection


def colored(n, avail):
    """Collection where edge e lies in exactly the layers listed in avail[e]."""
    h = 1 + max(c for cols in avail.values() for c in cols)
    return GraphCollection(n, [Graph.from_edges(n, [e for e, cols in avail.items() if i in cols]) for i in range(h)])


def check_bijection(tpl, c_prime, lam):
    assert set(lam) == set(tpl.f_edges)
    assert sorted(lam.values()) == sorted(tpl.a | set(c_prime))
    for i, e in enumerate(tpl.f_edges):
        assert lam[e] in tpl.colors_of(i)


def random_template(seed):
    rng = random.Random(seed)
    n = rng.randint(4, 9)
    h = rng.randint(6, 18)
    coll = random_collection(rng, n, h, rng.choice([0.4, 0.6, 0.8]))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    m = rng.randint(1, min(12, h, len(pairs)))
    f = rng.sample(pairs, m)
    ell = rng.randint(0, min(3, m))
    c_size = rng.randint(ell, max(ell, h - m + ell))
    return coll, f, ell, c_size


class TestExamples:
    def test_single_edge(self):
        coll = colored(2, {(0, 1): {0, 1, 2}})
        tpl = build_absorber(coll, [(0, 1)], 1, 2)
        assert tpl.a == frozenset() and len(tpl.c) == 2 and tpl.c <= {0, 1, 2}
        assert tpl.verified == "exhaustive"
        for col in tpl.c:
            assert absorb_colors(tpl, {col}) == {(0, 1): col}

    def test_rigid(self):
        coll = colored(4, {(0, 1): {0}, (2, 3): {1}})
        tpl = build_absorber(coll, [(0, 1), (2, 3)], 0, 0)
        assert tpl.a == {0, 1} and tpl.c == frozenset()
        assert absorb_colors(tpl, set()) == {(0, 1): 0, (2, 3): 1}

    def test_flexible_pair(self):
        coll = colored(4, {(0, 1): set(range(6)), (2, 3): set(range(6))})
        tpl = build_absorber(coll, [(0, 1), (2, 3)], 1, 3)
        assert len(tpl.a) == 1 and len(tpl.c) == 3 and not tpl.a & tpl.c
        for col in tpl.c:
            check_bijection(tpl, {col}, absorb_colors(tpl, {col}))

    def test_absorb_rejects_outside_c(self):
        coll = colored(2, {(0, 1): {0, 1, 2}})
        tpl = build_absorber(coll, [(0, 1)], 1, 2)
        outside = ({0, 1, 2} - tpl.c).pop()
        with pytest.raises(AbsorberError):
            absorb_colors(tpl, {outside})
        with pytest.raises(AbsorberError):
            absorb_colors(tpl, set(tpl.c))

    def test_hall_violation(self):
        coll = colored(6, {(0, 1): {0}, (2, 3): {0}, (4, 5): {1, 2}})
        with pytest.raises(AbsorberError) as err:
            build_absorber(coll, [(0, 1), (2, 3), (4, 5)], 0, 0)
        assert set(err.value.deficient) >= {(0, 1), (2, 3)}

    def test_precondition_errors(self):
        coll = colored(4, {(0, 1): {0, 1}, (2, 3): {0, 1}})
        with pytest.raises(AbsorberError):
            build_absorber(coll, [(0, 1), (2, 3)], 1, 2)  # |A| + |C| = 3 > h
        with pytest.raises(AbsorberError):
            build_absorber(coll, [(0, 1)], 1, 0)  # c_size < ell
        with pytest.raises(AbsorberError):
            build_absorber(coll, [(0, 1)], 0, 0, min_avail=3)
        with pytest.raises(AbsorberError):
            build_absorber(coll, [(0, 1), (0, 1)], 0, 0)

    def test_text_round_trip(self):
        coll = colored(4, {(0, 1): set(range(6)), (2, 3): set(range(6))})
        tpl = build_absorber(coll, [(0, 1), (2, 3)], 1, 3, seed=7)
        assert parse_template(tpl.to_text()) == tpl
        assert "verified: exhaustive" in tpl.to_text()


@given(st.integers(0, 10**6))
def test_random_templates_are_resilient(seed):
    coll, f, ell, c_size = random_template(seed)
    try:
        tpl = build_absorber(coll, f, ell, c_size)
    except AbsorberError as err:
        if err.deficient is not None:
            avail = [coll.availability[u][v] for u, v in err.deficient]
            union = 0
            for mask in avail:
                union |= mask
            assert union.bit_count() < len(avail)
        return
    m = len(f)
    assert len(tpl.a) + ell == m and not tpl.a & tpl.c and len(tpl.c) == c_size
    union = set().union(*(tpl.colors_of(i) for i in range(m)))
    assert tpl.a | tpl.c <= union
    if tpl.verified != "exhaustive":
        return
    avail = [set(tpl.colors_of(i)) for i in range(m)]
    for c_prime in combinations(sorted(tpl.c), ell):
        assert perfect_matching_exists(avail, set(tpl.a) | set(c_prime))
        check_bijection(tpl, c_prime, absorb_colors(tpl, c_prime))
    assert parse_template(tpl.to_text()) == tpl
