"""Average-free sets and filler multisets."""

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from reduction_forge.gadgets import (
    BadCompositionSum, GadgetError, TooLarge, behrend_set, filler_multiset, filler_size_bound,
    split_filler, verify_avg_free,
)
from reduction_forge.numeric import rational_root_ceil
from reduction_forge.problems import PartitionInstance, check_witness


def test_singleton_is_average_free():
    B = behrend_set(1, 4, Fraction(1, 2))
    assert len(B.elements) == 1
    assert verify_avg_free(B.elements, 4) == (True, None)
    assert verify_avg_free([1], 5)[0]


def test_arithmetic_progression_is_caught():
    ok, bad = verify_avg_free([1, 2, 3], 2)
    assert not ok
    xs, b, x = bad
    assert sum(xs) == b * x and (xs, b, x) == ((1, 3), 2, 2)


@pytest.mark.parametrize("n,k", [(4, 2), (6, 2), (5, 3)])
def test_behrend_sets_pass_the_exhaustive_check(n, k):
    B = behrend_set(n, k, Fraction(1, 2))
    assert len(set(B.elements)) == n
    assert verify_avg_free(B.elements, k)[0]


def test_behrend_size_matches_recomputed_parameters():
    B = behrend_set(8, 3, Fraction(1, 2))
    d = 6
    u = rational_root_ceil(Fraction(d * 8), d - 2)
    assert (B.params["d"], B.params["u"]) == (d, u)
    assert max(B.elements) <= 2 * (2 * 3 * u) ** d
    assert B.U == max(B.elements)


def test_behrend_rejects_bad_arguments():
    with pytest.raises(GadgetError):
        behrend_set(0, 2, Fraction(1, 2))
    with pytest.raises(GadgetError):
        behrend_set(3, 2, Fraction(1))


def test_verify_refuses_huge_searches():
    with pytest.raises(TooLarge):
        verify_avg_free(range(1, 200), 4, limit=10 ** 6)


def test_filler_small_case_is_ones():
    assert filler_multiset(3, 2).P == (1, 1, 1)
    assert filler_multiset(0, 3).P == ()


def test_filler_worked_example():
    F = filler_multiset(16, 2)
    assert F.h == 2
    assert sorted(F.P) == [1, 1, 2, 4, 4, 4]
    assert sum(F.P) == 16
    for t1 in range(17):
        targets = (t1, 16 - t1)
        assert check_witness(PartitionInstance(F.P, 2, targets=targets), split_filler(F, targets))


def test_split_degenerate_and_even_targets():
    F = filler_multiset(16, 2)
    w = split_filler(F, (0, 16))
    assert set(w.bins) == {1}
    assert check_witness(PartitionInstance(F.P, 2, targets=(8, 8)), split_filler(F, (8, 8)))
    with pytest.raises(BadCompositionSum):
        split_filler(F, (3, 3))


def test_filler_splits_every_composition_of_100_into_3():
    F = filler_multiset(100, 3)
    assert sum(F.P) == 100
    for a in range(101):
        for b in range(101 - a):
            targets = (a, b, 100 - a - b)
            assert check_witness(PartitionInstance(F.P, 3, targets=targets), split_filler(F, targets))


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 9), st.integers(min_value=2, max_value=6), st.data())
def test_filler_property(tau, k, data):
    F = filler_multiset(tau, k)
    assert sum(F.P) == tau
    if tau >= k * k:
        assert len(F.P) <= filler_size_bound(tau, k)
    cuts = sorted(data.draw(st.lists(st.integers(0, tau), min_size=k - 1, max_size=k - 1)))
    targets = tuple(b - a for a, b in zip([0] + cuts, cuts + [tau]))
    if len(F.P) <= 2000:
        w = split_filler(F, targets)
        assert check_witness(PartitionInstance(F.P, k, targets=targets), w)


def test_filler_size_grows_logarithmically():
    sizes = [len(filler_multiset(2 ** e, 3).P) for e in (10, 20, 40)]
    assert sizes[2] <= 5 * sizes[0]
