from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from onebitcs.errors import InconsistentPairError, UndefinedForZeroError
from onebitcs.signals import (
    SparseSignal,
    as_fraction,
    dynamic_range,
    min_same_sign_count,
    sign_binary,
    sign_ternary,
    support,
    ternary_from_binary_pair,
)

rationals = st.fractions(max_denominator=50).filter(lambda f: abs(f) < 1000)


@pytest.mark.parametrize("x, expected", [(0, 0), (Fraction(7, 3), 1), (-5, -1)])
def test_sign_ternary(x, expected):
    assert sign_ternary(x) == expected


@pytest.mark.parametrize("x, expected", [(0, 1), (2, 1), (-2, -1)])
def test_sign_binary_counts_zero_as_positive(x, expected):
    assert sign_binary(x) == expected


def test_pair_table():
    assert ternary_from_binary_pair(1, 1) == 0
    assert ternary_from_binary_pair(1, -1) == 1
    assert ternary_from_binary_pair(-1, 1) == -1
    with pytest.raises(InconsistentPairError):
        ternary_from_binary_pair(-1, -1)


@given(rationals)
def test_ternary_sign_is_recoverable_from_two_one_bit_signs(x):
    assert ternary_from_binary_pair(sign_binary(x), sign_binary(-x)) == sign_ternary(x)


def test_dynamic_range_examples():
    assert dynamic_range(SparseSignal.from_dense([2, -4, 0, 1])) == 4
    assert dynamic_range(SparseSignal.from_dense([5, 5])) == 1
    with pytest.raises(UndefinedForZeroError):
        dynamic_range(SparseSignal.zero(3))


def test_same_sign_count_examples():
    assert min_same_sign_count(SparseSignal.from_dense([1, -2, 3])) == 1
    assert min_same_sign_count(SparseSignal.from_dense([1, 2, 3])) == 0
    assert min_same_sign_count(SparseSignal.zero(4)) == 0


def test_support_examples():
    assert support(SparseSignal.from_dense([0, 3, 0, -1])) == {1, 3}
    assert support(SparseSignal.zero(2)) == frozenset()
    assert support(SparseSignal.from_dense([7])) == {0}


@given(st.lists(rationals, min_size=1, max_size=8), st.fractions(min_value=Fraction(1, 10), max_value=10))
def test_range_and_support_are_scale_invariant(values, c):
    x = SparseSignal.from_dense(values)
    y = x.scaled(c)
    assert support(y) == support(x)
    assert min_same_sign_count(y) == min_same_sign_count(x)
    assert min_same_sign_count(-x) == min_same_sign_count(x)
    if x.l0:
        assert dynamic_range(y) == dynamic_range(x)
        assert dynamic_range(x) >= 1


def test_zeros_are_dropped_and_equality_is_by_value():
    a = SparseSignal(4, {0: 1, 2: 0})
    b = SparseSignal.from_dense([1, 0, 0, 0])
    assert a == b and hash(a) == hash(b)
    assert a.l0 == 1 and a[2] == 0
    assert b.to_dense() == [1, 0, 0, 0]


def test_floats_are_rejected():
    with pytest.raises(TypeError):
        as_fraction(0.5)
    with pytest.raises(TypeError):
        SparseSignal(2, {0: 0.5})


def test_bad_indices_and_dimensions():
    with pytest.raises(IndexError):
        SparseSignal(3, {3: 1})
    with pytest.raises(ValueError):
        SparseSignal(0)
