"""Interval-union domain algebra."""

from hypothesis import given
from hypothesis import strategies as st

from topoplan.fd import (
    dom_clamp,
    dom_contains,
    dom_difference,
    dom_from_values,
    dom_intersect,
    dom_max,
    dom_min,
    dom_range,
    dom_remove_value,
    dom_size,
    dom_union,
    dom_values,
)


def _as_set(d):
    return set(dom_values(d))


def _well_formed(d):
    # sorted, disjoint, gap >= 2 between intervals
    for lo, hi in d:
        if lo > hi:
            return False
    for (l1, h1), (l2, h2) in zip(d, d[1:]):
        if l2 <= h1 + 1:
            return False
    return True


def test_range():
    assert dom_range(2, 5) == ((2, 5),)
    assert dom_range(5, 2) == ()
    assert dom_range(3, 3) == ((3, 3),)


def test_from_values_merges_adjacent():
    assert dom_from_values([4, 1, 2, 7]) == ((1, 2), (4, 4), (7, 7))
    assert dom_from_values([1, 2, 3]) == ((1, 3),)
    assert dom_from_values([5, 5, 5]) == ((5, 5),)
    assert dom_from_values([]) == ()


def test_min_max_size():
    d = dom_from_values([1, 2, 5, 9, 10])
    assert dom_min(d) == 1
    assert dom_max(d) == 10
    assert dom_size(d) == 5


def test_contains():
    d = ((0, 3), (7, 9))
    assert dom_contains(d, 0)
    assert dom_contains(d, 3)
    assert dom_contains(d, 8)
    assert not dom_contains(d, 4)
    assert not dom_contains(d, 10)
    assert not dom_contains(d, -1)


def test_clamp():
    d = ((0, 3), (7, 9))
    assert dom_clamp(d, 2, 8) == ((2, 3), (7, 8))
    assert dom_clamp(d, 4, 6) == ()
    assert dom_clamp(d, -5, 50) == d
    assert dom_clamp(d, 8, 9) == ((8, 9),)


def test_remove_value_splits():
    d = ((0, 4),)
    assert dom_remove_value(d, 2) == ((0, 1), (3, 4))
    assert dom_remove_value(d, 0) == ((1, 4),)
    assert dom_remove_value(d, 4) == ((0, 3),)
    assert dom_remove_value(((3, 3),), 3) == ()
    assert dom_remove_value(d, 9) == d


def test_intersect():
    a = ((0, 5), (8, 12))
    b = ((3, 9),)
    assert dom_intersect(a, b) == ((3, 5), (8, 9))
    assert dom_intersect(a, ()) == ()


def test_union_merges():
    a = ((0, 2),)
    b = ((3, 5),)
    assert dom_union(a, b) == ((0, 5),)
    assert dom_union(a, ((4, 5),)) == ((0, 2), (4, 5))


def test_difference():
    a = ((0, 9),)
    b = ((2, 3), (7, 7))
    assert dom_difference(a, b) == ((0, 1), (4, 6), (8, 9))
    assert dom_difference(a, a) == ()
    assert dom_difference(a, ()) == a


ivsets = st.lists(st.integers(-30, 30), max_size=12).map(dom_from_values)


@given(ivsets, ivsets)
def test_set_semantics(a, b):
    # every operation behaves exactly like the set operation it names
    assert _as_set(dom_intersect(a, b)) == _as_set(a) & _as_set(b)
    assert _as_set(dom_union(a, b)) == _as_set(a) | _as_set(b)
    assert _as_set(dom_difference(a, b)) == _as_set(a) - _as_set(b)
    for d in (dom_intersect(a, b), dom_union(a, b), dom_difference(a, b)):
        assert _well_formed(d)


@given(ivsets, st.integers(-30, 30))
def test_remove_value_semantics(a, v):
    r = dom_remove_value(a, v)
    assert _as_set(r) == _as_set(a) - {v}
    assert _well_formed(r)


@given(ivsets, st.integers(-35, 35), st.integers(-35, 35))
def test_clamp_semantics(a, lo, hi):
    r = dom_clamp(a, lo, hi)
    assert _as_set(r) == {v for v in _as_set(a) if lo <= v <= hi}
    assert _well_formed(r)
