"""Exact sparse signals and the sign / dynamic-range / same-sign primitives.

Indices are 0-based in memory; the text formats shift them to 1-based.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Union

from .errors import InconsistentPairError, UndefinedForZeroError

RationalLike = Union[int, Fraction, str]


def as_fraction(value: RationalLike | Rational) -> Fraction:
    """Coerce ``value`` to a :class:`Fraction`, refusing floats.

    Floats are rejected because a binary float silently carries a rounded
    value; callers wanting one must go through ``Fraction(float)`` on purpose.
    """
    if isinstance(value, float):
        raise TypeError("floats are not accepted as exact rationals; use Fraction")
    return Fraction(value)


class SparseSignal:
    """Immutable sparse vector in Q^n, stored as ``{index: nonzero value}``."""

    __slots__ = ("_dim", "_entries", "_hash")

    def __init__(self, dim: int, entries: Mapping[int, RationalLike] | None = None):
        if int(dim) != dim or dim < 1:
            raise ValueError(f"dimension must be a positive integer, got {dim!r}")
        stored: dict[int, Fraction] = {}
        for index, value in (entries or {}).items():
            if not 0 <= index < dim:
                raise IndexError(f"index {index} outside [0, {dim})")
            value = as_fraction(value)
            if value != 0:
                stored[int(index)] = value
        self._dim = int(dim)
        self._entries = dict(sorted(stored.items()))
        self._hash = None

    @classmethod
    def from_dense(cls, values: Iterable[RationalLike]) -> "SparseSignal":
        values = list(values)
        return cls(len(values), dict(enumerate(values)))

    @classmethod
    def zero(cls, dim: int) -> "SparseSignal":
        return cls(dim)

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def entries(self) -> Mapping[int, Fraction]:
        return MappingProxyType(self._entries)

    @property
    def l0(self) -> int:
        return len(self._entries)

    def __getitem__(self, index: int) -> Fraction:
        if not 0 <= index < self._dim:
            raise IndexError(index)
        return self._entries.get(index, Fraction(0))

    def items(self) -> Iterator[tuple[int, Fraction]]:
        return iter(self._entries.items())

    def to_dense(self) -> list[Fraction]:
        return [self[i] for i in range(self._dim)]

    def scaled(self, c: RationalLike) -> "SparseSignal":
        c = as_fraction(c)
        return SparseSignal(self._dim, {i: c * v for i, v in self._entries.items()})

    def __neg__(self) -> "SparseSignal":
        return self.scaled(-1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseSignal):
            return NotImplemented
        return self._dim == other._dim and self._entries == other._entries

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._dim, tuple(self._entries.items())))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{i}: {v}" for i, v in self._entries.items())
        return f"SparseSignal(dim={self._dim}, {{{body}}})"


def sign_ternary(x: RationalLike) -> int:
    x = as_fraction(x)
    return (x > 0) - (x < 0)


def sign_binary(x: RationalLike) -> int:
    """One-bit sign: +1 for x >= 0 (zero included), -1 otherwise."""
    return 1 if as_fraction(x) >= 0 else -1


def ternary_from_binary_pair(s_pos: int, s_neg: int) -> int:
    """Recover sign(x) from the pair (sign*(x), sign*(-x))."""
    table = {(1, 1): 0, (1, -1): 1, (-1, 1): -1}
    try:
        return table[(s_pos, s_neg)]
    except KeyError:
        raise InconsistentPairError(
            f"no real x has sign*(x)={s_pos} and sign*(-x)={s_neg}"
        ) from None


def dynamic_range(v: SparseSignal) -> Fraction:
    """Largest over smallest nonzero magnitude (kappa)."""
    if v.l0 == 0:
        raise UndefinedForZeroError("dynamic range is undefined for the zero signal")
    mags = [abs(value) for value in v.entries.values()]
    return max(mags) / min(mags)


def min_same_sign_count(v: SparseSignal) -> int:
    """rho(v): the smaller of the positive-entry and negative-entry counts."""
    pos = sum(1 for value in v.entries.values() if value > 0)
    return min(pos, v.l0 - pos)


def support(v: SparseSignal) -> frozenset[int]:
    return frozenset(v.entries)
