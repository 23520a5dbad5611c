from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from onebitcs.designs import LIST_UNION_FREE, verify_list_disjunct, verify_list_union_free
from onebitcs.errors import DimensionMismatchError, InstanceTooLargeError, InvalidBaseError, PreconditionError
from onebitcs.sensing import (
    STRICT,
    TERNARY,
    BinaryRow,
    PowerRow,
    SensingMatrix,
    build_gaussian_matrix,
    build_thm1_matrix,
    build_thm3_matrix,
    build_thm4_matrix,
    build_thm5_matrix,
    measure,
    power_row,
    thm1_list_size,
    thm3_parameters,
    thm4_base,
)
from onebitcs.signals import SparseSignal, dynamic_range, min_same_sign_count, sign_ternary, ternary_from_binary_pair


def single(row, n):
    return SensingMatrix(n, [row], "thm4")


# -- rows ------------------------------------------------------------------------


def test_power_row_values():
    assert power_row([1, 2, 4], 3).values(5) == [0, 1, 3, 0, 9]
    assert power_row(BinaryRow({0}), 7).values(3) == [1, 0, 0]
    with pytest.raises(InvalidBaseError):
        power_row([0, 1], -1)
    with pytest.raises(InvalidBaseError):
        power_row([0, 1], 0)


def test_power_row_bit_guard():
    row = power_row(range(600), 2**10)
    with pytest.raises(InstanceTooLargeError):
        row.entry(599)


def test_measure_examples():
    x = SparseSignal.from_dense([1, -1])
    assert measure(SensingMatrix(2, [BinaryRow({0, 1})], "thm1"), x).entries == (0,)
    assert measure(single(power_row([0, 1], 2), 2), x).entries == (-1,)
    A = build_thm4_matrix(12, 2, Fraction(1, 2), 3, seed=2)
    assert measure(A, SparseSignal.zero(12)).entries == (0,) * A.m
    assert set(measure(A, SparseSignal.zero(12), STRICT).entries) == {1}


def test_dimension_mismatch():
    A = build_thm4_matrix(12, 2, Fraction(1, 2), 3, seed=2)
    with pytest.raises(DimensionMismatchError):
        measure(A, SparseSignal.zero(11))


# -- builders ----------------------------------------------------------------------


def test_thm1_matrix_certifies():
    A = build_thm1_matrix(12, 2, 1, seed=3)
    D = A.union_free_block()
    assert A.certified and D.kind == LIST_UNION_FREE
    assert A.param("l") == 1 and A.param("alpha") == Fraction(1, 2)
    assert verify_list_union_free(D, 2, 1, Fraction(1, 2))
    assert D.d == A.param("d")


def test_thm1_list_size_clamps():
    assert thm1_list_size(2, Fraction(1, 2)) == 1
    assert thm1_list_size(8, Fraction(1, 2)) == 2
    with pytest.raises(PreconditionError):
        build_thm1_matrix(2, 2, 1)


def test_thm3_parameters():
    p = thm3_parameters(4, Fraction(1, 2))
    assert p["p"] == 2 and p["l1"] == 1 and p["K"] == 6 and p["l2"] == 1
    with pytest.raises(PreconditionError):
        build_thm3_matrix(12, 1, Fraction(1, 2))


def test_thm3_structure_small():
    A = build_thm3_matrix(12, 2, 1, seed=0)
    p = A.param("p")
    assert A.group_size == p
    B = A.disjunct_design()
    assert A.m == A.split + p * B.m
    assert verify_list_disjunct(B, A.param("K"), A.param("l2"))
    assert verify_list_union_free(A.union_free_block(), 2, A.param("l1"), Fraction(1, 2))
    for supp, idx in A.groups():
        rows = [A.rows[i] for i in idx]
        assert [r.base for r in rows] == list(range(2, p + 2))
        assert all(frozenset(r.support) == supp for r in rows)


def test_thm3_structure_n40():
    A = build_thm3_matrix(40, 4, Fraction(1, 2), seed=5)
    assert A.param("p") == 2
    assert A.m == A.split + 2 * A.disjunct_design().m
    assert A.union_free_block().d == A.param("d")


def test_thm4_base_rule():
    assert thm4_base(3) == 5
    assert thm4_base(Fraction(7, 2)) == 6
    A = build_thm4_matrix(12, 2, Fraction(1, 2), 3, seed=2)
    B = A.disjunct_design()
    assert A.m == B.m and A.group_size == 1
    assert all(isinstance(r, PowerRow) and r.base == 5 for r in A.rows)
    assert verify_list_disjunct(B, 2, 1)


def test_thm5_groups():
    A = build_thm5_matrix(12, 2, Fraction(1, 2), 1, seed=9)
    assert A.group_size == 3 and A.m == 3 * A.disjunct_design().m
    assert [r.base for r in A.rows[:3]] == [2, 3, 4]
    assert build_thm5_matrix(12, 2, Fraction(1, 2), 0, seed=9).group_size == 1


def test_gaussian_matrix():
    A = build_gaussian_matrix(4, 2, seed=0)
    assert A.dense().shape == (2, 4) and np.isfinite(A.dense()).all()
    assert build_gaussian_matrix(4, 2, seed=0) == A
    big = build_gaussian_matrix(1000, 1000, seed=1).dense()
    assert abs(big.mean()) < 0.01


# -- properties ----------------------------------------------------------------------

VALUES = [Fraction(v) for v in (1, -1, 2, -2, Fraction(1, 2), Fraction(-1, 2))]


def small_signals(n: int, k: int, values=VALUES):
    for s in range(0, k + 1):
        for supp in combinations(range(n), s):
            for vals in product(values, repeat=s):
                yield SparseSignal(n, dict(zip(supp, vals)))


@pytest.fixture(scope="module")
def thm3_small():
    return build_thm3_matrix(12, 2, 1, seed=0)


@settings(max_examples=40, deadline=None)
@given(st.dictionaries(st.integers(0, 11), st.fractions(max_denominator=6).filter(bool), max_size=3),
       st.fractions(min_value=Fraction(1, 20), max_value=20))
def test_scale_invariance(thm3_small, entries, c):
    x = SparseSignal(12, entries)
    for mode in (TERNARY, STRICT):
        assert measure(thm3_small, x.scaled(c), mode) == measure(thm3_small, x, mode)


@settings(max_examples=40, deadline=None)
@given(st.dictionaries(st.integers(0, 11), st.fractions(max_denominator=6).filter(bool), max_size=3))
def test_ternary_from_two_strict_passes(thm3_small, entries):
    x = SparseSignal(12, entries)
    t = measure(thm3_small, x).entries
    pos = measure(thm3_small, x, STRICT).entries
    neg = measure(thm3_small, -x, STRICT).entries
    assert t == tuple(ternary_from_binary_pair(a, b) for a, b in zip(pos, neg))


@pytest.mark.parametrize("p", [1, 2, 3])
def test_power_group_never_all_zero_on_few_entries(p):
    # distinct positive bases: a nonzero polynomial with <= p terms has < p positive roots
    n = 6
    group = SensingMatrix(n, [power_row(range(n), b) for b in range(2, p + 2)], "thm3")
    for x in small_signals(n, p):
        if x.l0:
            assert any(measure(group, x).entries), x


def test_power_group_can_vanish_beyond_its_size():
    # 1 - 3a + 2a^2 = (1-a)(1-2a) vanishes at a=1 only; with bases 2,3 use (a-2)(a-3)
    x = SparseSignal(3, {0: 6, 1: -5, 2: 1})
    group = SensingMatrix(3, [power_row(range(3), 2), power_row(range(3), 3)], "thm3")
    assert measure(group, x).entries == (0, 0)


@pytest.mark.parametrize("eta", [1, 2, 3, Fraction(5, 2)])
def test_cauchy_zero_interpretation(eta):
    n = 5
    row = power_row([0, 2, 4], thm4_base(eta))
    A = single(row, n)
    mags = sorted({Fraction(1), Fraction(eta), (1 + Fraction(eta)) / 2})
    values = mags + [-v for v in mags]
    for x in small_signals(n, 3, values):
        if x.l0 and dynamic_range(x) <= eta:
            zero = measure(A, x).entries == (0,)
            assert zero == set(x.entries).isdisjoint(row.support), x


@pytest.mark.parametrize("R", [0, 1])
def test_same_sign_group_never_all_zero(R):
    n = 5
    A = SensingMatrix(n, [power_row(range(n), b) for b in range(2, 2 * R + 3)], "thm5")
    for x in small_signals(n, 4, [Fraction(1), Fraction(-1), Fraction(3), Fraction(-2)]):
        if x.l0 and min_same_sign_count(x) <= R:
            assert any(measure(A, x).entries), x


def test_binary_and_power_outputs_are_exact():
    # an exact cancellation that floating point would miss
    x = SparseSignal(3, {0: Fraction(1, 3), 1: Fraction(1, 3), 2: Fraction(-2, 3)})
    A = SensingMatrix(3, [BinaryRow({0, 1, 2})], "thm1")
    assert measure(A, x).entries == (0,)
    assert sign_ternary(sum(x.entries.values())) == 0
