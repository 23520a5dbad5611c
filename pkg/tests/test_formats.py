from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from onebitcs.designs import DesignParams, construct_list_disjunct, construct_list_union_free
from onebitcs.errors import FormatError
from onebitcs.formats import (
    read_design,
    read_matrix,
    read_measurement,
    read_signal,
    write_design,
    write_matrix,
    write_measurement,
    write_signal,
)
from onebitcs.sensing import (
    STRICT,
    TERNARY,
    MeasurementVector,
    build_gaussian_matrix,
    build_thm1_matrix,
    build_thm3_matrix,
    build_thm4_matrix,
    build_thm5_matrix,
)
from onebitcs.signals import SparseSignal

HALF = Fraction(1, 2)


def test_signal_layout():
    x = SparseSignal(5, {0: HALF, 3: -3})
    assert write_signal(x) == "signal n=5\n1 1/2\n4 -3/1\n"
    assert read_signal("signal n=5\n4 -3\n1 1/2\n") == x


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 20).flatmap(
    lambda n: st.tuples(st.just(n), st.dictionaries(st.integers(0, n - 1), st.fractions(max_denominator=1000)))))
def test_signal_round_trip(case):
    n, entries = case
    x = SparseSignal(n, entries)
    assert read_signal(write_signal(x)) == x


@pytest.mark.parametrize("make", [
    lambda: construct_list_disjunct(DesignParams(12, 2, 1, seed=1)),
    lambda: construct_list_union_free(DesignParams(12, 2, 1, alpha=HALF, seed=7)),
])
def test_design_round_trip(make):
    D = make()
    text = write_design(D)
    assert text.splitlines()[0].startswith(f"design m={D.m} n=12 ")
    assert read_design(text) == D


def test_design_header_fields():
    D = construct_list_union_free(DesignParams(12, 2, 1, alpha=HALF, seed=7))
    head = write_design(D).splitlines()[0]
    assert f"d={D.d}" in head and "property=list-union-free" in head and "alpha=1/2" in head
    D2 = construct_list_disjunct(DesignParams(12, 2, 1, seed=1))
    assert "alpha=-" in write_design(D2).splitlines()[0]


@pytest.mark.parametrize("make", [
    lambda: build_thm1_matrix(12, 2, 1, seed=3),
    lambda: build_thm3_matrix(12, 2, 1, seed=0),
    lambda: build_thm4_matrix(12, 2, HALF, Fraction(7, 2), seed=2),
    lambda: build_thm5_matrix(12, 2, HALF, 1, seed=9),
    lambda: build_gaussian_matrix(10, 7, seed=4),
])
def test_matrix_round_trip(make):
    A = make()
    assert read_matrix(write_matrix(A)) == A


def test_measurement_round_trip():
    for y in (MeasurementVector((1, 0, -1, 0)), MeasurementVector((1, 1, -1), STRICT), MeasurementVector((1, -1))):
        assert read_measurement(write_measurement(y), y.mode) == y
    assert write_measurement(MeasurementVector((1, 0, -1))) == "1 0 -1\n"


@pytest.mark.parametrize("reader, text", [
    (read_signal, ""),
    (read_signal, "sig n=3\n"),
    (read_signal, "signal n=3\n4 1\n"),
    (read_signal, "signal n=3\n1 0.5\n"),
    (read_signal, "signal n=3\n1 1\n1 2\n"),
    (read_design, "design m=2 n=2 d=1 property=list-disjunct k=1 l=1 alpha=- status=certified seed=0\n1\n"),
    (read_design, "design m=2 n=2 d=2 property=list-disjunct k=1 l=1 alpha=- status=certified seed=0\n1\n2\n"),
    (read_matrix, "matrix regime=thm1 n=2 m=2 params=- seed=0\nB 1\n"),
    (read_matrix, "matrix regime=thm1 n=2 m=1 params=- seed=0\nX 1\n"),
    (read_matrix, "matrix regime=warp n=2 m=1 params=- seed=0\nB 1\n"),
    (read_measurement, "1 2 0"),
])
def test_malformed_files(reader, text):
    with pytest.raises(FormatError):
        reader(text)


def test_strict_measurement_rejects_zero():
    with pytest.raises(FormatError):
        read_measurement("1 0", STRICT)
    assert read_measurement("1 0").mode == TERNARY
