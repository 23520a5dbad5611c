"""How many measurements each regime asks for as k grows.

The combinatorial budgets come straight from the design constructions, so
they wobble where floor and ceiling rules change the list size. A log-log fit
over k = 4, 16, 64 still shows the growth rate.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from onebitcs import BudgetQuery, measurement_budget

KS = [4, 16, 64]
N = 10_000
EPS = Fraction(1, 4)


def main():
    rows = [
        ("approximate", "general"),
        ("superset", "general"),
        ("superset", "bounded-range"),
        ("superset", "binary"),
        ("approximate", "gaussian"),
    ]
    print(f"n = {N}, eps = {EPS}, eta = 2\n")
    print(f"{'regime':<26}" + "".join(f"{'k=' + str(k):>12}" for k in KS) + f"{'slope':>8}")
    for problem, cls in rows:
        ms = [measurement_budget(BudgetQuery(problem, cls, N, k, EPS, 2)) for k in KS]
        slope = np.polyfit(np.log(KS), np.log(ms), 1)[0]
        print(f"{problem + '/' + cls:<26}" + "".join(f"{m:>12}" for m in ms) + f"{slope:>8.2f}")


if __name__ == "__main__":
    main()
