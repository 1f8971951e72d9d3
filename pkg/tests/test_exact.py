from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from transversal.exact import Root, as_fraction, ceil_times, compare, ge, le

fracs = st.fractions(min_value=0, max_value=4, max_denominator=50)


def test_as_fraction_parses_strings_and_floats():
    assert as_fraction("2/3") == Fraction(2, 3)
    assert as_fraction(0.1) == Fraction(1, 10)
    with pytest.raises(TypeError):
        as_fraction(True)


def test_ceil_times_with_root():
    # sqrt(1/4) * 8 = 4
    assert ceil_times(Root(Fraction(1, 4), 2), 8) == 4
    assert ceil_times(Root(Fraction(1, 5), 2), 8) == 4  # 3.58 -> 4


def test_root_comparisons():
    half = Root(Fraction(1, 4), 2)
    assert compare(Fraction(1, 2), half) == 0
    assert le(Fraction(49, 100), half) and not le(Fraction(51, 100), half)
    assert ge(Fraction(1, 2), half)
    assert compare(Fraction(-1), half) == -1


@given(fracs, fracs, st.integers(1, 6))
def test_root_matches_powers(x, base, k):
    r = Root(base, k)
    assert compare(x, r) == (x ** k > base) - (x ** k < base)


@given(fracs, st.integers(0, 40))
def test_ceil_times_is_least(t, m):
    s = ceil_times(t, m)
    if m == 0:
        assert s == 0
        return
    if t * m > m:
        assert s == m + 1
        return
    assert Fraction(s) >= t * m
    assert s == 0 or Fraction(s - 1) < t * m
