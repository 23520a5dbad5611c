"""Why too few rows cannot work: build two signals that look identical.

If the zero pattern of a matrix is not list disjunct, some small set S of
columns is hidden behind a set T. Put a generic signal on T, add a tiny bump
on S, and no sign changes. The two supports then differ in |S| places, so no
decoder can be accurate for both.
"""

from __future__ import annotations

from fractions import Fraction

from onebitcs import adversarial_pair, build_thm4_matrix, measure
from onebitcs.sensing import BinaryRow, SensingMatrix


def report(name, A, k, eps):
    pair = adversarial_pair(A, k, eps, seed=0)
    if pair is None:
        print(f"{name}: no confusable pair at k={k}, eps={eps}")
        return
    x1, x2 = pair
    print(f"{name}: k={k}, eps={eps}")
    print(f"  x1 = {dict((j + 1, str(v)) for j, v in x1.items())}")
    print(f"  x2 = {dict((j + 1, str(v)) for j, v in x2.items())}")
    print(f"  identical signs: {measure(A, x1) == measure(A, x2)}")


def main():
    eps = Fraction(1, 4)
    report("one all-ones row", SensingMatrix(12, [BinaryRow(range(12))], "thm1"), 2, eps)
    report("identity", SensingMatrix(12, [BinaryRow({i}) for i in range(12)], "thm1"), 1, eps)
    # a matrix certified for k = 2 is fooled once the sparsity triples
    A = build_thm4_matrix(12, 2, Fraction(1, 2), 3, seed=2)
    report(f"{A.m}-row power matrix", A, 6, eps)


if __name__ == "__main__":
    main()
