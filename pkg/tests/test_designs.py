from __future__ import annotations

import math
from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from onebitcs.designs import (
    CERTIFIED,
    LIST_DISJUNCT,
    LIST_UNION_FREE,
    UNVERIFIED,
    BinaryDesign,
    DesignParams,
    certify,
    construct_list_disjunct,
    construct_list_union_free,
    expand_symbols,
    find_disjunct_violation,
    list_disjunct_budget,
    union_free_alphabet,
    union_free_budget,
    union_free_inner_rows,
    verify_list_disjunct,
    verify_list_union_free,
)
from onebitcs.errors import (
    ConstructionFailedError,
    InstanceTooLargeError,
    NonUniformWeightError,
    PreconditionError,
)

from oracles import naive_disjunct, naive_union_free

HALF = Fraction(1, 2)


def identity(n: int) -> BinaryDesign:
    return BinaryDesign.from_rows(np.eye(n, dtype=bool))


# -- verifiers on fixed instances ----------------------------------------------


def test_identity_is_disjunct_and_all_ones_is_not():
    assert verify_list_disjunct(identity(3), 1, 1)
    ones = BinaryDesign.from_rows(np.ones((3, 3), dtype=bool))
    assert not verify_list_disjunct(ones, 1, 1)


def test_identity_five_is_one_one_disjunct():
    D = identity(5)
    assert verify_list_disjunct(D, 1, 1)
    assert naive_disjunct(D.columns, 1, 1)


def test_union_free_two_column_examples():
    apart = BinaryDesign(m=2, n=2, columns=(frozenset({0}), frozenset({1})))
    same = BinaryDesign(m=2, n=2, columns=(frozenset({0, 1}), frozenset({0, 1})))
    assert verify_list_union_free(apart, 1, 1, HALF)
    assert not verify_list_union_free(same, 1, 1, HALF)


def test_union_free_needs_uniform_weight():
    D = BinaryDesign(m=2, n=2, columns=(frozenset({0}), frozenset({0, 1})))
    assert D.d is None
    with pytest.raises(NonUniformWeightError):
        verify_list_union_free(D, 1, 1, HALF)


def test_violation_names_a_real_witness():
    ones = BinaryDesign.from_rows(np.ones((2, 4), dtype=bool))
    S, T = find_disjunct_violation(ones, 2, 1)
    assert len(S) == 1 and len(T) == 2 and not set(S) & set(T)


def test_size_preconditions():
    with pytest.raises(PreconditionError):
        verify_list_disjunct(identity(3), 2, 2)
    with pytest.raises(InstanceTooLargeError):
        verify_list_disjunct(identity(30), 5, 2, cap=1000)


# -- budgets -------------------------------------------------------------------


def test_union_free_alphabet_and_inner_rows():
    assert union_free_alphabet(4, 1, HALF) == 148
    assert union_free_inner_rows(60, 4, 1, HALF) == 62
    assert union_free_budget(60, 4, 1, HALF) == 148 * 62


def test_budgets_against_direct_float_evaluation():
    for n, k, l in [(12, 2, 1), (100, 4, 2), (10_000, 16, 2)]:
        expect = math.ceil(2 * k * (k / l + 1) * (math.log(n / (k + l)) + 1))
        assert list_disjunct_budget(n, k, l) == expect
        a = 0.5
        q = math.ceil((k + l) * (math.e / a) ** 2)
        mp = math.ceil((2 / a) * (k / l + 1) * (math.log(n / (k + l)) + math.e) / math.log(math.e / a))
        assert union_free_budget(n, k, l, HALF) == q * mp


# -- construction ----------------------------------------------------------------


def test_disjunct_construction_small_and_certified():
    D = construct_list_disjunct(DesignParams(12, 2, 1, seed=1))
    assert D.status == CERTIFIED and D.kind == LIST_DISJUNCT
    assert D.m <= 24
    assert naive_disjunct(D.columns, 2, 1)


def test_disjunct_construction_fails_with_one_row():
    with pytest.raises(ConstructionFailedError) as info:
        construct_list_disjunct(DesignParams(12, 2, 1, target_m=1, seed=0))
    assert info.value.attempts == 64


def test_no_single_row_design_is_two_one_disjunct():
    # a row hits some column j of S; T then needs two columns that row misses,
    # or else j is uncovered; either way some (S, T) fails
    for bits in product((0, 1), repeat=12):
        D = BinaryDesign.from_rows(np.array([bits], dtype=bool))
        assert not verify_list_disjunct(D, 2, 1)
    for bits in [(1,) * 12, (0,) * 12, (1,) + (0,) * 11, (1, 1) + (0,) * 10, (1,) * 11 + (0,)]:
        assert not naive_disjunct(BinaryDesign.from_rows(np.array([bits], dtype=bool)).columns, 2, 1)


def test_union_free_construction_small_target():
    D = construct_list_union_free(DesignParams(12, 2, 1, alpha=HALF, target_m=89 * 8, seed=7))
    assert D.status == CERTIFIED and D.kind == LIST_UNION_FREE
    assert D.m <= 89 * 8
    assert all(len(c) == D.d for c in D.columns)
    assert naive_union_free(D.columns, 2, 1, HALF)


def test_union_free_target_below_alphabet_fails():
    with pytest.raises(ConstructionFailedError):
        construct_list_union_free(DesignParams(12, 2, 1, alpha=HALF, target_m=10))


def test_above_cap_returns_unverified_sample():
    D = construct_list_disjunct(DesignParams(30, 5, 2, seed=0), cap=1000)
    assert D.status == UNVERIFIED
    assert D.m == list_disjunct_budget(30, 5, 2)


def test_construction_is_reproducible():
    p = DesignParams(12, 2, 1, seed=5)
    assert construct_list_disjunct(p) == construct_list_disjunct(p)
    u = DesignParams(12, 2, 1, alpha=HALF, seed=5)
    assert construct_list_union_free(u) == construct_list_union_free(u)


def test_params_validation():
    with pytest.raises(PreconditionError):
        DesignParams(3, 2, 2)
    with pytest.raises(PreconditionError):
        DesignParams(10, 2, 1, alpha=Fraction(1))
    with pytest.raises(PreconditionError):
        construct_list_union_free(DesignParams(10, 2, 1))


# -- properties ------------------------------------------------------------------


def test_disjunct_monotone_in_list_size():
    D = construct_list_disjunct(DesignParams(10, 3, 1, seed=2))
    for k2 in range(1, 4):
        for l2 in range(1, 10 - k2 + 1):
            if k2 + l2 <= 10 and l2 <= 3:
                assert verify_list_disjunct(D, k2, l2), (k2, l2)


def test_permuted_design_stays_certified():
    D = construct_list_disjunct(DesignParams(12, 2, 1, seed=4))
    perm = list(np.random.default_rng(0).permutation(12))
    P = certify(D.permuted(perm))
    assert P.status == CERTIFIED


columns_strategy = st.integers(4, 7).flatmap(
    lambda n: st.lists(st.frozensets(st.integers(0, 5), max_size=4), min_size=n, max_size=n)
)


@settings(max_examples=150, deadline=None)
@given(columns_strategy, st.integers(1, 2), st.integers(1, 2))
def test_disjunct_verifier_matches_naive_oracle(cols, k, l):
    D = BinaryDesign(m=6, n=len(cols), columns=tuple(cols))
    assert verify_list_disjunct(D, k, l) == naive_disjunct(D.columns, k, l)


@settings(max_examples=150, deadline=None)
@given(
    st.integers(4, 7).flatmap(lambda n: st.lists(st.lists(st.integers(0, 2), min_size=n, max_size=n), min_size=1, max_size=3)),
    st.integers(1, 2),
    st.integers(1, 2),
    st.sampled_from([Fraction(1, 3), HALF, Fraction(2, 3), Fraction(1)]),
)
def test_union_free_verifier_matches_naive_oracle(symbols, k, l, alpha):
    sym = np.array(symbols)
    D = BinaryDesign(m=3 * sym.shape[0], n=sym.shape[1], columns=expand_symbols(sym, 3))
    assert verify_list_union_free(D, k, l, alpha) == naive_union_free(D.columns, k, l, alpha)


@settings(max_examples=100, deadline=None)
@given(st.integers(4, 7).flatmap(lambda n: st.lists(st.lists(st.integers(0, 2), min_size=n, max_size=n), min_size=1, max_size=3)),
       st.integers(1, 2))
def test_union_free_at_alpha_one_implies_disjunct(symbols, k):
    sym = np.array(symbols)
    D = BinaryDesign(m=3 * sym.shape[0], n=sym.shape[1], columns=expand_symbols(sym, 3))
    if verify_list_union_free(D, k, 1, Fraction(1)):
        assert verify_list_disjunct(D, k, 1)
