"""List-disjunct and list union-free binary designs.

Designs are stored column-wise: column ``j`` is the set of rows holding a 1.
Both verifiers are exhaustive. They enumerate the k-sets ``T`` and, for each,
look for an l-set ``S`` outside ``T`` that breaks the property; columns are
packed into Python ints so set algebra is a handful of bit operations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (
    ConstructionFailedError,
    InstanceTooLargeError,
    NonUniformWeightError,
    PreconditionError,
)
from .seeding import mix64, rng

LIST_DISJUNCT = "list-disjunct"
LIST_UNION_FREE = "list-union-free"
CERTIFIED = "certified"
UNVERIFIED = "unverified"

VERIFY_CAP = 10**8
RETRIES = 64


@dataclass(frozen=True)
class DesignParams:
    n: int
    k: int
    l: int
    alpha: Optional[Fraction] = None
    target_m: Optional[int] = None
    seed: int = 0

    def __post_init__(self):
        if self.k < 1 or self.l < 1:
            raise PreconditionError(f"need k >= 1 and l >= 1, got k={self.k}, l={self.l}")
        if self.k + self.l > self.n:
            raise PreconditionError(f"k + l = {self.k + self.l} exceeds n = {self.n}")
        if self.alpha is not None:
            object.__setattr__(self, "alpha", Fraction(self.alpha))
            if not 0 < self.alpha < 1:
                raise PreconditionError(f"alpha must lie in (0, 1), got {self.alpha}")
        if self.target_m is not None and self.target_m < 1:
            raise PreconditionError("target_m must be positive")


@dataclass(frozen=True)
class BinaryDesign:
    """An m x n 0/1 matrix kept as its column supports, plus certification."""

    m: int
    n: int
    columns: tuple[frozenset[int], ...]
    kind: str = LIST_DISJUNCT
    k: int = 0
    l: int = 0
    alpha: Optional[Fraction] = None
    status: str = UNVERIFIED
    seed: int = 0
    _masks: tuple[int, ...] = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self):
        cols = tuple(frozenset(int(i) for i in c) for c in self.columns)
        if len(cols) != self.n:
            raise ValueError(f"expected {self.n} columns, got {len(cols)}")
        for c in cols:
            if any(not 0 <= i < self.m for i in c):
                raise ValueError(f"column support {sorted(c)} not inside [0, {self.m})")
        object.__setattr__(self, "columns", cols)
        if self.alpha is not None:
            object.__setattr__(self, "alpha", Fraction(self.alpha))
        masks = tuple(sum(1 << i for i in c) for c in cols)
        object.__setattr__(self, "_masks", masks)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]] | np.ndarray, **meta) -> "BinaryDesign":
        """Build from a dense 0/1 matrix given row by row."""
        arr = np.asarray(rows, dtype=bool)
        if arr.ndim != 2:
            raise ValueError("rows must form a 2-D array")
        m, n = arr.shape
        cols = tuple(frozenset(np.flatnonzero(arr[:, j]).tolist()) for j in range(n))
        return cls(m=m, n=n, columns=cols, **meta)

    @property
    def d(self) -> Optional[int]:
        """Common column weight, or None when the weights differ."""
        weights = {len(c) for c in self.columns}
        return weights.pop() if len(weights) == 1 else None

    @property
    def certified(self) -> bool:
        return self.status == CERTIFIED

    def to_array(self) -> np.ndarray:
        arr = np.zeros((self.m, self.n), dtype=np.int8)
        for j, col in enumerate(self.columns):
            arr[list(col), j] = 1
        return arr

    def rows(self) -> list[frozenset[int]]:
        out: list[set[int]] = [set() for _ in range(self.m)]
        for j, col in enumerate(self.columns):
            for i in col:
                out[i].add(j)
        return [frozenset(r) for r in out]

    def permuted(self, perm: Sequence[int]) -> "BinaryDesign":
        """Column j of the result is column ``perm[j]`` of this design."""
        return replace(self, columns=tuple(self.columns[p] for p in perm))

    def with_status(self, status: str, **meta) -> "BinaryDesign":
        return replace(self, status=status, **meta)


# -- row budgets -----------------------------------------------------------


def list_disjunct_budget(n: int, k: int, l: int) -> int:
    """Rows sufficient for a (k, l)-list disjunct matrix, 2k(k/l+1)(ln(n/(k+l))+1)."""
    return math.ceil(2 * k * (k / l + 1) * (math.log(n / (k + l)) + 1))


def union_free_alphabet(k: int, l: int, alpha: Fraction) -> int:
    return math.ceil((k + l) * (math.e / float(alpha)) ** 2)


def union_free_inner_rows(n: int, k: int, l: int, alpha: Fraction) -> int:
    """Row count m' of the q-ary matrix; also the column weight d after expansion."""
    a = float(alpha)
    value = (2 / a) * (k / l + 1) * (math.log(n / (k + l)) + math.e) / math.log(math.e / a)
    return math.ceil(value)


def union_free_budget(n: int, k: int, l: int, alpha: Fraction) -> int:
    return union_free_alphabet(k, l, alpha) * union_free_inner_rows(n, k, l, alpha)


def pair_count(n: int, k: int, l: int) -> int:
    """Number of disjoint (S, T) pairs with |S| = l and |T| = k."""
    return math.comb(n, k) * math.comb(n - k, l)


def _check_size(n: int, k: int, l: int, cap: int) -> None:
    if k < 0 or l < 1 or k + l > n:
        raise PreconditionError(f"need 0 <= k, 1 <= l and k + l <= n (k={k}, l={l}, n={n})")
    count = pair_count(n, k, l)
    if count > cap:
        raise InstanceTooLargeError(count, cap)


# -- exhaustive verification -----------------------------------------------


def _unions(masks: Sequence[int], k: int):
    """Yield (T, OR of masks over T) for every k-subset T, in lexicographic order."""
    n = len(masks)

    def walk(start: int, depth: int, chosen: list[int], union: int):
        if depth == k:
            yield tuple(chosen), union
            return
        for t in range(start, n - (k - depth) + 1):
            chosen.append(t)
            yield from walk(t + 1, depth + 1, chosen, union | masks[t])
            chosen.pop()

    yield from walk(0, 0, [], 0)


def _cover(pieces: list[tuple[int, int]], k: int, need: int) -> Optional[list[int]]:
    """Pick at most k of the (column, bits) pieces whose union has >= need bits.

    Depth-first with an optimistic popcount bound; exact for the small d
    seen in practice.
    """
    pieces = sorted(pieces, key=lambda p: -p[1].bit_count())
    sizes = [p[1].bit_count() for p in pieces]

    def walk(start: int, left: int, union: int, chosen: list[int]):
        have = union.bit_count()
        if have >= need:
            return list(chosen)
        if left == 0:
            return None
        for i in range(start, len(pieces)):
            if have + sum(sizes[i : i + left]) < need:
                return None
            bits = pieces[i][1]
            if not bits & ~union:
                continue
            chosen.append(pieces[i][0])
            found = walk(i + 1, left - 1, union | bits, chosen)
            chosen.pop()
            if found is not None:
                return found
        return None

    return walk(0, k, 0, [])


def _pad(T: list[int], k: int, n: int, avoid: int) -> tuple[int, ...]:
    """Extend T to exactly k columns with the smallest unused indices other than ``avoid``."""
    out = set(T)
    for c in range(n):
        if len(out) >= k:
            break
        if c != avoid and c not in out:
            out.add(c)
    return tuple(sorted(out))


def _single_column_violation(masks: Sequence[int], k: int, need_of) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
    """l = 1 search: some column j meets ``need_of(j)`` rows of B_j using k other columns."""
    n = len(masks)
    for j in range(n):
        mj = masks[j]
        need = need_of(j)
        if need <= 0:
            return (j,), _pad([], k, n, j)
        pieces = {}
        for t in range(n):
            if t != j:
                bits = masks[t] & mj
                if bits and bits not in pieces.values():
                    pieces[t] = bits
        chosen = _cover(list(pieces.items()), k, need)
        if chosen is not None:
            return (j,), _pad(chosen, k, n, j)
    return None


def find_disjunct_violation(
    design: BinaryDesign, k: int, l: int, cap: int = VERIFY_CAP
) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Some (S, T) with every column of S covered by the union over T, else None."""
    _check_size(design.n, k, l, cap)
    masks = design._masks
    if l == 1:
        return _single_column_violation(masks, k, lambda j: masks[j].bit_count())
    cols = range(design.n)
    for T, union in _unions(masks, k):
        covered = [j for j in cols if not masks[j] & ~union and j not in T]
        if len(covered) >= l:
            return tuple(covered[:l]), T
    return None


def verify_list_disjunct(design: BinaryDesign, k: int, l: int, cap: int = VERIFY_CAP) -> bool:
    return find_disjunct_violation(design, k, l, cap) is None


def find_union_free_violation(
    design: BinaryDesign, k: int, l: int, alpha: Fraction, cap: int = VERIFY_CAP
) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
    """First (S, T) in which every j in S overlaps the other columns in >= alpha*d rows."""
    d = design.d
    if d is None:
        raise NonUniformWeightError("list union-free verification needs uniform column weight")
    _check_size(design.n, k, l, cap)
    alpha = Fraction(alpha)
    # |B_j ∩ U| >= alpha*d  <=>  den*|B_j ∩ U| >= num*d
    num, den = alpha.numerator, alpha.denominator
    bar = num * d
    masks = design._masks
    n = design.n
    if l == 1:
        need = -(-bar // den)  # smallest overlap with den*overlap >= num*d
        return _single_column_violation(masks, k, lambda j: need)
    for T, union_t in _unions(masks, k):
        inside = set(T)
        rest = [j for j in range(n) if j not in inside]
        # a column under the bar against U_T alone can still be pushed over it
        # by the other members of S, so S is enumerated in full
        for S in combinations(rest, l):
            for j in S:
                union = union_t
                for s in S:
                    if s != j:
                        union |= masks[s]
                if den * (masks[j] & union).bit_count() < bar:
                    break
            else:
                return S, T
    return None


def verify_list_union_free(
    design: BinaryDesign, k: int, l: int, alpha: Fraction, cap: int = VERIFY_CAP
) -> bool:
    return find_union_free_violation(design, k, l, alpha, cap) is None


def certify(design: BinaryDesign, cap: int = VERIFY_CAP) -> BinaryDesign:
    """Re-run the verifier named by ``design.kind`` and stamp the result."""
    if design.kind == LIST_UNION_FREE:
        ok = verify_list_union_free(design, design.k, design.l, design.alpha, cap)
    else:
        ok = verify_list_disjunct(design, design.k, design.l, cap)
    return design.with_status(CERTIFIED if ok else UNVERIFIED)


# -- randomized construction -----------------------------------------------


def _smallest_passing(lo: int, hi: int, passes) -> int:
    """Binary search for the smallest size in [lo, hi] that passes; ``passes(hi)`` is known."""
    while lo < hi:
        mid = (lo + hi) // 2
        if passes(mid):
            hi = mid
        else:
            lo = mid + 1
    return hi


def _shrink_disjunct(full: np.ndarray, passes) -> np.ndarray:
    """Shortest passing row prefix, then drop any single row that is redundant.

    Every candidate is re-verified, so the result is always certified.
    """
    rows = _smallest_passing(1, full.shape[0], lambda r: passes(full[:r]))
    keep = list(range(rows))
    for r in reversed(range(rows)):
        trial = [i for i in keep if i != r]
        if trial and passes(full[trial]):
            keep = trial
    return full[keep]


def construct_list_disjunct(
    params: DesignParams,
    *,
    cap: int = VERIFY_CAP,
    retries: int = RETRIES,
    shrink: bool = True,
) -> BinaryDesign:
    """Sample a Bernoulli(1/(k+1)) matrix and certify it as (k, l)-list disjunct.

    Row count defaults to the existence budget (or ``target_m`` if smaller).
    With ``shrink`` the certified matrix is cut to the shortest row prefix
    that still verifies and then greedily pruned of redundant rows. When
    exhaustive verification exceeds ``cap`` a single sample is returned with
    status ``unverified``.
    """
    n, k, l = params.n, params.k, params.l
    m_max = list_disjunct_budget(n, k, l)
    if params.target_m is not None:
        m_max = min(m_max, params.target_m)
    meta = dict(kind=LIST_DISJUNCT, k=k, l=l, alpha=None, seed=params.seed)

    def sample(attempt: int) -> np.ndarray:
        gen = rng(mix64(params.seed, attempt))
        return gen.integers(0, k + 1, size=(m_max, n)) == 0

    if pair_count(n, k, l) > cap:
        return BinaryDesign.from_rows(sample(0), status=UNVERIFIED, **meta)

    for attempt in range(retries):
        full = sample(attempt)
        if not verify_list_disjunct(BinaryDesign.from_rows(full, **meta), k, l, cap):
            continue
        if shrink:
            full = _shrink_disjunct(full, lambda a: verify_list_disjunct(BinaryDesign.from_rows(a, **meta), k, l, cap))
        return BinaryDesign.from_rows(full, status=CERTIFIED, **meta)
    raise ConstructionFailedError(retries, f"(k={k}, l={l})-list disjunct with m={m_max}, n={n}")


def expand_symbols(symbols: np.ndarray, q: int) -> tuple[frozenset[int], ...]:
    """Map an m' x n matrix over [q] to column supports of the qm' x n indicator matrix."""
    mp, n = symbols.shape
    return tuple(
        frozenset(int(r * q + symbols[r, j]) for r in range(mp)) for j in range(n)
    )


def construct_list_union_free(
    params: DesignParams,
    *,
    alphabet: Optional[int] = None,
    cap: int = VERIFY_CAP,
    retries: int = RETRIES,
    shrink: bool = True,
) -> BinaryDesign:
    """Random q-ary code expanded to a binary (n, qm', m', k, l, alpha)-list union-free matrix.

    Every column has weight d = m'. ``target_m`` caps the binary row count,
    which caps m' at ``target_m // q``.
    """
    if params.alpha is None:
        raise PreconditionError("list union-free construction needs alpha")
    n, k, l, alpha = params.n, params.k, params.l, params.alpha
    q = alphabet if alphabet is not None else union_free_alphabet(k, l, alpha)
    mp_max = union_free_inner_rows(n, k, l, alpha)
    if params.target_m is not None:
        mp_max = min(mp_max, params.target_m // q)
        if mp_max < 1:
            raise ConstructionFailedError(0, f"target_m={params.target_m} is below the alphabet size {q}")
    meta = dict(kind=LIST_UNION_FREE, k=k, l=l, alpha=alpha, seed=params.seed)

    def design_of(symbols: np.ndarray, status: str = UNVERIFIED) -> BinaryDesign:
        mp = symbols.shape[0]
        return BinaryDesign(m=q * mp, n=n, columns=expand_symbols(symbols, q), status=status, **meta)

    def sample(attempt: int) -> np.ndarray:
        return rng(mix64(params.seed, attempt)).integers(0, q, size=(mp_max, n))

    if pair_count(n, k, l) > cap:
        return design_of(sample(0))

    for attempt in range(retries):
        full = sample(attempt)
        if not verify_list_union_free(design_of(full), k, l, alpha, cap):
            continue
        rows = mp_max
        if shrink:
            rows = _smallest_passing(
                1, mp_max, lambda r: verify_list_union_free(design_of(full[:r]), k, l, alpha, cap)
            )
        return design_of(full[:rows], CERTIFIED)
    raise ConstructionFailedError(retries, f"(k={k}, l={l}, alpha={alpha})-list union-free, n={n}")


def union_of(design: BinaryDesign, cols: Iterable[int]) -> frozenset[int]:
    out: set[int] = set()
    for c in cols:
        out |= design.columns[c]
    return frozenset(out)
