"""Sensing matrices for each construction regime, and y = sign(Ax).

Binary and power rows are evaluated in exact rational arithmetic, so their
ternary outputs never depend on a tolerance. Dense Gaussian rows use floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

from .designs import (
    CERTIFIED,
    LIST_DISJUNCT,
    LIST_UNION_FREE,
    UNVERIFIED,
    BinaryDesign,
    DesignParams,
    construct_list_disjunct,
    construct_list_union_free,
)
from .errors import (
    DimensionMismatchError,
    InstanceTooLargeError,
    InvalidBaseError,
    PreconditionError,
)
from .seeding import mix64, rng
from .signals import SparseSignal, as_fraction, sign_binary, sign_ternary

TERNARY = "ternary"
STRICT = "strict"

THM1, THM3, THM4, THM5, GAUSSIAN = "thm1", "thm3", "thm4", "thm5", "gaussian"
REGIMES = (THM1, THM3, THM4, THM5, GAUSSIAN)

POWER_BITS_LIMIT = 4096
HALF = Fraction(1, 2)


@dataclass(frozen=True)
class BinaryRow:
    support: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "support", frozenset(int(i) for i in self.support))

    def dot(self, x: SparseSignal) -> Fraction:
        s = self.support
        return sum((v for j, v in x.items() if j in s), Fraction(0))


@dataclass(frozen=True)
class PowerRow:
    """Row whose t-th nonzero (left to right) equals base**(t-1)."""

    support: tuple[int, ...]
    base: Fraction
    _pos: Mapping[int, int] = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "support", tuple(sorted(int(i) for i in self.support)))
        object.__setattr__(self, "base", as_fraction(self.base))
        if self.base <= 0:
            raise InvalidBaseError(f"power-row base must be positive, got {self.base}")
        object.__setattr__(self, "_pos", {j: t for t, j in enumerate(self.support)})

    def entry(self, j: int, bits_limit: int = POWER_BITS_LIMIT) -> Fraction:
        t = self._pos.get(j)
        if t is None:
            return Fraction(0)
        b = self.base
        bits = t * max(b.numerator.bit_length(), b.denominator.bit_length())
        if bits > bits_limit:
            raise InstanceTooLargeError(bits, bits_limit, "bits in a power-row entry")
        return b**t

    def dot(self, x: SparseSignal) -> Fraction:
        pos = self._pos
        return sum((v * self.entry(j) for j, v in x.items() if j in pos), Fraction(0))

    def values(self, n: int) -> list[Fraction]:
        return [self.entry(j) for j in range(n)]


@dataclass(frozen=True)
class DenseRow:
    values: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))


Row = Union[BinaryRow, PowerRow, DenseRow]


def power_row(z: BinaryRow | Iterable[int], a) -> PowerRow:
    support = z.support if isinstance(z, BinaryRow) else z
    return PowerRow(tuple(support), as_fraction(a))


@dataclass(frozen=True)
class MeasurementVector:
    entries: tuple[int, ...]
    mode: str = TERNARY

    def __post_init__(self):
        entries = tuple(int(v) for v in self.entries)
        allowed = {-1, 0, 1} if self.mode == TERNARY else {-1, 1}
        if self.mode not in (TERNARY, STRICT):
            raise ValueError(f"unknown measurement mode {self.mode!r}")
        if not set(entries) <= allowed:
            raise ValueError(f"{self.mode} measurements must lie in {sorted(allowed)}")
        object.__setattr__(self, "entries", entries)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def support(self) -> frozenset[int]:
        """Rows with a nonzero output (only meaningful in ternary mode)."""
        return frozenset(i for i, v in enumerate(self.entries) if v != 0)


@dataclass(frozen=True)
class SensingMatrix:
    """Ordered measurement rows with the regime that produced them.

    Rows ``[0, split)`` form the binary list union-free block (thm1, thm3).
    Rows ``[split, m)`` are power rows in consecutive groups of
    ``group_size``, one group per row of the underlying list-disjunct design.
    """

    n: int
    rows: tuple[Row, ...]
    regime: str
    params: tuple[tuple[str, Union[int, Fraction]], ...] = ()
    seed: int = 0
    split: int = 0
    group_size: int = 1
    status: str = CERTIFIED

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        object.__setattr__(self, "params", tuple(self.params))
        if self.regime not in REGIMES:
            raise ValueError(f"unknown regime {self.regime!r}")

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def certified(self) -> bool:
        return self.status == CERTIFIED

    def param(self, name: str, default=None):
        return dict(self.params).get(name, default)

    def union_free_block(self) -> BinaryDesign:
        cols: list[set[int]] = [set() for _ in range(self.n)]
        for i, row in enumerate(self.rows[: self.split]):
            for j in row.support:
                cols[j].add(i)
        return BinaryDesign(
            m=self.split,
            n=self.n,
            columns=tuple(frozenset(c) for c in cols),
            kind=LIST_UNION_FREE,
            k=self.param("k", 0),
            l=self.param("l1", self.param("l", 0)),
            alpha=self.param("alpha", HALF),
            status=self.status,
            seed=self.seed,
        )

    def groups(self) -> list[tuple[frozenset[int], range]]:
        """(support of the disjunct row, indices of its power rows) in row order."""
        out = []
        for start in range(self.split, self.m, self.group_size):
            idx = range(start, min(start + self.group_size, self.m))
            out.append((frozenset(self.rows[start].support), idx))
        return out

    def disjunct_design(self) -> BinaryDesign:
        groups = self.groups()
        cols: list[set[int]] = [set() for _ in range(self.n)]
        for r, (supp, _) in enumerate(groups):
            for j in supp:
                cols[j].add(r)
        k = self.param("K", self.param("k", 0))
        return BinaryDesign(
            m=len(groups),
            n=self.n,
            columns=tuple(frozenset(c) for c in cols),
            kind=LIST_DISJUNCT,
            k=k,
            l=self.param("l2", self.param("l", 0)),
            status=self.status,
            seed=self.seed,
        )

    def dense(self) -> np.ndarray:
        """Float copy of the matrix (exact rows are converted entrywise)."""
        out = np.zeros((self.m, self.n))
        for i, row in enumerate(self.rows):
            if isinstance(row, DenseRow):
                out[i] = row.values
            elif isinstance(row, PowerRow):
                out[i] = [float(v) for v in row.values(self.n)]
            else:
                out[i, list(row.support)] = 1.0
        return out


# -- parameter rules ---------------------------------------------------------


def _floor_sqrt(r: Fraction) -> int:
    """floor(sqrt(r)) for a nonnegative rational, exactly."""
    return math.isqrt(r.numerator * r.denominator) // r.denominator


def _ceil_sqrt(r: Fraction) -> int:
    s = _floor_sqrt(r)
    return s if Fraction(s * s) == r else s + 1


def _check_eps(eps: Fraction) -> Fraction:
    eps = as_fraction(eps)
    if not 0 < eps <= 1:
        raise PreconditionError(f"eps must lie in (0, 1], got {eps}")
    return eps


def thm1_list_size(k: int, eps) -> int:
    return max(1, math.floor(as_fraction(eps) * k / 2))


def thm3_parameters(k: int, eps) -> dict[str, int]:
    """Block parameters for the two-stage construction with zeta = sqrt(eps/k).

    zeta*k = sqrt(eps*k), so every rounded quantity is computed exactly from
    the rational eps*k.
    """
    ek = as_fraction(eps) * k
    return {
        "l1": max(1, _floor_sqrt(ek / 4)),
        "p": max(1, _ceil_sqrt(ek)),
        "K": k + _ceil_sqrt(ek),
        "l2": max(1, math.floor(ek / 2)),
    }


def thm4_base(eta) -> int:
    """Smallest convenient integer strictly above 1 + eta."""
    return math.ceil(as_fraction(eta)) + 2


def disjunct_list_size(k: int, eps) -> int:
    return max(1, math.floor(as_fraction(eps) * k))


def _status(*designs: BinaryDesign) -> str:
    return CERTIFIED if all(d.certified for d in designs) else UNVERIFIED


def _power_rows(design: BinaryDesign, bases: Sequence[int]) -> list[PowerRow]:
    out = []
    for row in design.rows():
        out.extend(PowerRow(tuple(row), Fraction(a)) for a in bases)
    return out


# -- builders ----------------------------------------------------------------


def build_thm1_matrix(n: int, k: int, eps, seed: int = 0, **design_kw) -> SensingMatrix:
    """All-binary matrix of an (n, m, d, k, l, 1/2)-list union-free design, l = max(1, floor(eps*k/2))."""
    eps = _check_eps(eps)
    if k < 1:
        raise PreconditionError("k must be positive")
    l = thm1_list_size(k, eps)
    if k + l > n:
        raise PreconditionError(f"k + l = {k + l} exceeds n = {n}")
    design = construct_list_union_free(DesignParams(n, k, l, HALF, seed=seed), **design_kw)
    rows = [BinaryRow(r) for r in design.rows()]
    params = (("k", k), ("eps", eps), ("l", l), ("alpha", HALF), ("d", design.d))
    return SensingMatrix(n, rows, THM1, params, seed, split=len(rows), status=_status(design))


def build_thm3_matrix(n: int, k: int, eps, seed: int = 0, **design_kw) -> SensingMatrix:
    """Union-free block stacked over power-row groups from a list-disjunct design."""
    eps = _check_eps(eps)
    if k < 2:
        raise PreconditionError("the two-stage construction needs k >= 2")
    p = thm3_parameters(k, eps)
    if k + p["l1"] > n or p["K"] + p["l2"] > n:
        raise PreconditionError(f"n = {n} too small for k = {k}, eps = {eps}")
    first = construct_list_union_free(
        DesignParams(n, k, p["l1"], HALF, seed=mix64(seed, 0)), **design_kw
    )
    second = construct_list_disjunct(DesignParams(n, p["K"], p["l2"], seed=mix64(seed, 1)), **design_kw)
    rows = [BinaryRow(r) for r in first.rows()]
    split = len(rows)
    rows += _power_rows(second, range(2, p["p"] + 2))
    params = (
        ("k", k), ("eps", eps), ("l1", p["l1"]), ("alpha", HALF), ("d", first.d),
        ("K", p["K"]), ("l2", p["l2"]), ("p", p["p"]),
    )
    return SensingMatrix(n, rows, THM3, params, seed, split=split, group_size=p["p"],
                         status=_status(first, second))


def build_thm4_matrix(n: int, k: int, eps, eta, seed: int = 0, **design_kw) -> SensingMatrix:
    """One power row with base ceil(eta) + 2 per row of a (k, max(1, floor(eps*k)))-list disjunct design."""
    eps = _check_eps(eps)
    eta = as_fraction(eta)
    if eta <= 1:
        raise PreconditionError(f"eta must exceed 1, got {eta}")
    l = disjunct_list_size(k, eps)
    if k < 1 or k + l > n:
        raise PreconditionError(f"need 1 <= k and k + l <= n (k={k}, l={l}, n={n})")
    design = construct_list_disjunct(DesignParams(n, k, l, seed=seed), **design_kw)
    base = thm4_base(eta)
    rows = _power_rows(design, [base])
    params = (("k", k), ("eps", eps), ("l", l), ("eta", eta), ("base", base))
    return SensingMatrix(n, rows, THM4, params, seed, split=0, group_size=1, status=_status(design))


def build_thm5_matrix(n: int, k: int, eps, R: int, seed: int = 0, **design_kw) -> SensingMatrix:
    """2R+1 power rows (bases 2 .. 2R+2) per row of a (k, max(1, floor(eps*k)))-list disjunct design."""
    eps = _check_eps(eps)
    if R < 0 or int(R) != R:
        raise PreconditionError(f"R must be a nonnegative integer, got {R}")
    l = disjunct_list_size(k, eps)
    if k < 1 or k + l > n:
        raise PreconditionError(f"need 1 <= k and k + l <= n (k={k}, l={l}, n={n})")
    design = construct_list_disjunct(DesignParams(n, k, l, seed=seed), **design_kw)
    rp = max(1, 2 * R + 1)
    rows = _power_rows(design, range(2, rp + 2))
    params = (("k", k), ("eps", eps), ("l", l), ("R", int(R)), ("Rp", rp))
    return SensingMatrix(n, rows, THM5, params, seed, split=0, group_size=rp, status=_status(design))


def build_gaussian_matrix(n: int, m: int, seed: int = 0) -> SensingMatrix:
    if m < 1 or n < 1:
        raise PreconditionError("need m >= 1 and n >= 1")
    values = rng(seed).standard_normal((m, n))
    rows = [DenseRow(tuple(r)) for r in values.tolist()]
    return SensingMatrix(n, rows, GAUSSIAN, (), seed, split=0, group_size=1, status=UNVERIFIED)


# -- measurement -------------------------------------------------------------


def inner_products(A: SensingMatrix, x: SparseSignal) -> list:
    """Exact <row, x> for binary/power rows, float for dense rows."""
    if x.dim != A.n:
        raise DimensionMismatchError(f"signal has dim {x.dim}, matrix has n = {A.n}")
    out = []
    dense_x = None
    for row in A.rows:
        if isinstance(row, DenseRow):
            if dense_x is None:
                dense_x = np.array([float(v) for v in x.to_dense()])
            out.append(float(np.dot(row.values, dense_x)))
        else:
            out.append(row.dot(x))
    return out


def measure(A: SensingMatrix, x: SparseSignal, mode: str = TERNARY, tau: float = 0.0) -> MeasurementVector:
    """y = sign(Ax) in ternary or strict (one-bit) mode.

    ``tau`` only affects dense rows: values with |v| <= tau count as zero,
    so in strict mode they report +1 for both x and -x.
    """
    if mode not in (TERNARY, STRICT):
        raise ValueError(f"unknown measurement mode {mode!r}")
    out = []
    for v in inner_products(A, x):
        if isinstance(v, float):
            if abs(v) <= tau:
                out.append(0 if mode == TERNARY else 1)
            else:
                out.append(1 if v > 0 else -1)
        else:
            out.append(sign_ternary(v) if mode == TERNARY else sign_binary(v))
    return MeasurementVector(tuple(out), mode)
