"""Polynomial sign tools, the confusable-pair constructor, and row budgets."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .designs import (
    VERIFY_CAP,
    BinaryDesign,
    find_disjunct_violation,
    list_disjunct_budget,
    union_free_budget,
)
from .errors import PreconditionError, ResampleCapExceededError
from .seeding import rng
from .sensing import (
    HALF,
    DenseRow,
    SensingMatrix,
    disjunct_list_size,
    inner_products,
    measure,
    thm1_list_size,
    thm3_parameters,
)
from .signals import SparseSignal, as_fraction


def _nonzero(coeffs: Iterable) -> list[Fraction]:
    out = [as_fraction(c) for c in coeffs]
    out = [c for c in out if c != 0]
    if not out:
        raise ValueError("coefficient sequence has no nonzero entry")
    return out


def descartes_positive_root_bound(coeffs: Sequence) -> int:
    """Sign changes along the coefficients (zeros skipped).

    Bounds the number of positive real roots counted with multiplicity.
    """
    c = _nonzero(coeffs)
    return sum(1 for a, b in zip(c, c[1:]) if (a > 0) != (b > 0))


def cauchy_root_radius(coeffs: Sequence) -> Fraction:
    """1 + max|c_i| / |c_lead| for coefficients listed by increasing exponent.

    Every complex root of the polynomial has modulus strictly below this value.
    """
    c = _nonzero(coeffs)
    return 1 + max(abs(v) for v in c) / abs(c[-1])


def range_root_radius(eta) -> Fraction:
    """Radius 1 + eta, which dominates the Cauchy radius when kappa(coeffs) <= eta."""
    return 1 + as_fraction(eta)


# -- confusable pairs --------------------------------------------------------

PAIR_VALUES = tuple(
    Fraction(s) * v
    for v in (Fraction(1), Fraction(2), Fraction(3), Fraction(1, 2), Fraction(3, 2))
    for s in (1, -1)
)
PAIR_RESAMPLES = 1000


def zero_pattern(A: SensingMatrix) -> BinaryDesign:
    if any(isinstance(r, DenseRow) for r in A.rows):
        raise PreconditionError("confusable-pair search needs binary or power rows")
    cols: list[set[int]] = [set() for _ in range(A.n)]
    for i, row in enumerate(A.rows):
        for j in row.support:
            cols[j].add(i)
    return BinaryDesign(m=A.m, n=A.n, columns=tuple(frozenset(c) for c in cols))


def adversarial_pair(
    A: SensingMatrix,
    k: int,
    eps,
    seed: int = 0,
    *,
    cap: int = VERIFY_CAP,
    resamples: int = PAIR_RESAMPLES,
) -> Optional[tuple[SparseSignal, SparseSignal]]:
    """Two k-sparse signals with equal measurements whose supports share <= k(1-2eps) indices.

    Returns None when the zero pattern of A is (k - s, s)-list disjunct with
    s = ceil(2*eps*k), since then no such pair can be built this way.
    """
    eps = as_fraction(eps)
    s = max(1, math.ceil(2 * eps * k))
    t = k - s
    if t < 0:
        raise PreconditionError(f"2*eps*k = {2 * eps * k} leaves no room inside k = {k}")
    pattern = zero_pattern(A)
    hit = find_disjunct_violation(pattern, t, s, cap)
    if hit is None:
        return None
    S, T = hit
    touched = set()
    for j in T:
        touched |= pattern.columns[j]
    scale = [max((abs(row.entry(j)) if hasattr(row, "entry") else Fraction(1)) for j in row.support)
             if row.support else Fraction(1) for row in A.rows]

    gen = rng(seed)
    for _ in range(resamples):
        x1 = SparseSignal(A.n, {j: PAIR_VALUES[gen.integers(len(PAIR_VALUES))] for j in T})
        prods = inner_products(A, x1)
        if all(prods[i] != 0 for i in touched):
            break
    else:
        raise ResampleCapExceededError(f"no generic x1 on T = {T} after {resamples} draws")

    gamma = min((abs(prods[i]) / scale[i] for i in touched), default=Fraction(1))
    # the per-row perturbation is at most |S| * bump * scale_i = gamma*scale_i/2
    bump = gamma / (2 * len(S))
    x2 = SparseSignal(A.n, {**dict(x1.items()), **{j: bump for j in S}})
    if measure(A, x1) != measure(A, x2):
        raise AssertionError("confusable pair does not share its measurements")
    return x1, x2


# -- measurement budgets -----------------------------------------------------

PROBLEMS = ("exact", "approximate", "superset")
SIGNAL_CLASSES = ("general", "bounded-range", "same-sign", "binary", "gaussian")


@dataclass(frozen=True)
class BudgetQuery:
    problem: str
    signal_class: str
    n: int
    k: int
    eps: Optional[Fraction] = None
    eta: Optional[Fraction] = None
    R: Optional[int] = None

    def __post_init__(self):
        if self.problem not in PROBLEMS:
            raise PreconditionError(f"unknown problem {self.problem!r}")
        if self.signal_class not in SIGNAL_CLASSES:
            raise PreconditionError(f"unknown signal class {self.signal_class!r}")
        for name in ("eps", "eta"):
            value = getattr(self, name)
            if value is not None:
                object.__setattr__(self, name, as_fraction(value))
        if self.n < 1 or self.k < 1:
            raise PreconditionError("need n >= 1 and k >= 1")

    @property
    def regime(self) -> str:
        return f"{self.problem}/{self.signal_class}"


def gaussian_budget(n: int, k: int, eps, eta) -> int:
    """ceil((3 pi k eta / (2 sqrt(eps))) * ln(5 e n eta / sqrt(eps)))."""
    e, h = float(as_fraction(eps)), float(as_fraction(eta))
    return math.ceil(3 * math.pi * k * h / (2 * math.sqrt(e)) * math.log(5 * math.e * n * h / math.sqrt(e)))


def thm1_budget(n: int, k: int, eps) -> int:
    return union_free_budget(n, k, thm1_list_size(k, eps), HALF)


def thm3_budget(n: int, k: int, eps) -> int:
    p = thm3_parameters(k, eps)
    first = union_free_budget(n, k, p["l1"], HALF)
    return first + p["p"] * list_disjunct_budget(n, p["K"], p["l2"])


def thm4_budget(n: int, k: int, eps) -> int:
    return list_disjunct_budget(n, k, disjunct_list_size(k, eps))


def thm5_budget(n: int, k: int, eps, R: int) -> int:
    return (2 * R + 1) * thm4_budget(n, k, eps)


def _require(q: BudgetQuery, *names: str) -> None:
    missing = [name for name in names if getattr(q, name) is None]
    if missing:
        raise PreconditionError(f"{q.regime} needs {', '.join(missing)}")


def measurement_budget(q: BudgetQuery) -> int:
    """Default row count of the construction serving ``q`` (natural logs, rounded up).

    Exact recovery is read as superset recovery with eps = 1/(2k), the value
    below which a superset answer of integral size must be exact.
    """
    if q.problem == "exact":
        sharp = Fraction(1, 2 * q.k)
        if q.signal_class in ("gaussian", "bounded-range"):
            _require(q, "eta")
            return gaussian_budget(q.n, q.k, sharp, q.eta) if q.signal_class == "gaussian" \
                else thm4_budget(q.n, q.k, sharp)
        if q.signal_class == "binary":
            return gaussian_budget(q.n, q.k, sharp, 1)
        if q.signal_class == "same-sign":
            _require(q, "R")
            return thm5_budget(q.n, q.k, sharp, q.R)
        return thm3_budget(q.n, q.k, sharp)

    _require(q, "eps")
    if q.problem == "approximate":
        if q.signal_class == "general":
            return thm1_budget(q.n, q.k, q.eps)
        if q.signal_class in ("bounded-range", "gaussian"):
            _require(q, "eta")
            return gaussian_budget(q.n, q.k, q.eps, q.eta)
        if q.signal_class == "binary":
            return gaussian_budget(q.n, q.k, q.eps, 1)
        _require(q, "R")
        return thm5_budget(q.n, q.k, q.eps, q.R)

    if q.signal_class == "general":
        return thm3_budget(q.n, q.k, q.eps)
    if q.signal_class == "bounded-range":
        _require(q, "eta")
        return thm4_budget(q.n, q.k, q.eps)
    if q.signal_class == "same-sign":
        _require(q, "R")
        return thm5_budget(q.n, q.k, q.eps, q.R)
    if q.signal_class == "binary":
        return thm5_budget(q.n, q.k, q.eps, 0)
    raise PreconditionError("superset recovery has no Gaussian-measurement budget")


BUDGET_COLUMNS = ("regime", "n", "k", "eps", "eta", "R", "m")


def budget_csv(queries: Iterable[BudgetQuery]) -> str:
    """One CSV row per query; missing parameters are written as '-'."""

    def cell(v):
        if v is None:
            return "-"
        return f"{v.numerator}/{v.denominator}" if isinstance(v, Fraction) else str(v)

    lines = [",".join(BUDGET_COLUMNS)]
    for q in queries:
        m = measurement_budget(q)
        lines.append(",".join([q.regime, str(q.n), str(q.k), cell(q.eps), cell(q.eta), cell(q.R), str(m)]))
    return "\n".join(lines) + "\n"
