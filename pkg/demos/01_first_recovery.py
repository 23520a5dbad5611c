"""Recover the support of a 2-sparse signal from sign measurements.

We build two matrices for n = 12 and k = 2. The first is a list union-free
design and only promises an approximate support. The second stacks power rows
under it and promises a superset of the true support. Both see the signal
through signs alone.
"""

from __future__ import annotations

from fractions import Fraction

from onebitcs import (
    SparseSignal,
    build_thm1_matrix,
    build_thm3_matrix,
    decode_approximate,
    decode_superset,
    measure,
)


def show(label, report, truth):
    rep = report.against(truth)
    print(f"{label:<12} returned {sorted(j + 1 for j in rep.returned)}"
          f"  false positives {rep.false_positives}  false negatives {rep.false_negatives}")


def main():
    x = SparseSignal(12, {2: Fraction(3, 2), 9: -1})
    truth = set(x.entries)
    print(f"signal support (1-based): {sorted(j + 1 for j in truth)}")

    A = build_thm1_matrix(12, 2, 1, seed=3)
    y = measure(A, x)
    print(f"\nunion-free matrix: {A.m} rows, {sum(1 for v in y.entries if v)} nonzero signs")
    show("approximate", decode_approximate(A, y, 2, 1), truth)

    B = build_thm3_matrix(12, 2, 1, seed=0)
    y = measure(B, x)
    print(f"\ntwo-block matrix: {B.split} union-free rows + {B.m - B.split} power rows")
    show("superset", decode_superset(B, y, 2, 1), truth)

    # the same measurements come back for any positive rescaling of x
    assert measure(B, x.scaled(7)) == y
    print("\nrescaling x by 7 leaves every sign unchanged, so only the support is recoverable")


if __name__ == "__main__":
    main()
