"""Support decoders for each sensing regime.

All combinatorial decoders work on the ternary measurement vector and the
column/row structure recorded in the :class:`SensingMatrix`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Mapping, Optional

import numpy as np
from scipy.optimize import linprog

from .errors import (
    ContractViolationError,
    DecodingFailedError,
    DimensionMismatchError,
    InstanceTooLargeError,
    PreconditionError,
    RegimeMismatchError,
)
from .sensing import (
    GAUSSIAN,
    TERNARY,
    THM1,
    THM3,
    THM4,
    THM5,
    MeasurementVector,
    SensingMatrix,
    measure,
)
from .signals import SparseSignal, as_fraction

L0_CANDIDATE_CAP = 10**6
L0_MARGIN = 1e-6


@dataclass(frozen=True)
class RecoveryReport:
    returned: frozenset[int]
    reference: Optional[frozenset[int]] = None
    regime: str = ""
    k: int = 0
    eps: Fraction = Fraction(0)

    @property
    def false_positives(self) -> Optional[int]:
        if self.reference is None:
            return None
        return len(self.returned - self.reference)

    @property
    def false_negatives(self) -> Optional[int]:
        if self.reference is None:
            return None
        return len(self.reference - self.returned)

    def against(self, reference: Iterable[int]) -> "RecoveryReport":
        return replace(self, reference=frozenset(reference))

    def is_approximate(self) -> bool:
        """|S| <= k, |S ∩ supp| >= max(|supp| - eps*k, 0), |S \\ supp| <= eps*k."""
        ref = self._need_reference()
        budget = self.eps * self.k
        return (
            len(self.returned) <= self.k
            and len(self.returned & ref) >= max(len(ref) - budget, 0)
            and self.false_positives <= budget
        )

    def is_superset(self) -> bool:
        """supp ⊆ S and |S| <= |supp| + eps*k."""
        ref = self._need_reference()
        return ref <= self.returned and len(self.returned) <= len(ref) + self.eps * self.k

    def _need_reference(self) -> frozenset[int]:
        if self.reference is None:
            raise ValueError("report carries no reference support")
        return self.reference


def _check(A: SensingMatrix, y: MeasurementVector, regime: str) -> None:
    if A.regime != regime:
        raise RegimeMismatchError(f"decoder expects a {regime} matrix, got {A.regime}")
    if len(y) != A.m:
        raise DimensionMismatchError(f"{len(y)} measurements for a matrix with {A.m} rows")
    if y.mode != TERNARY:
        raise PreconditionError("combinatorial decoders need ternary measurements")


def _delete_excess(C: Iterable[int], k: int, score: Mapping[int, int] | None = None) -> frozenset[int]:
    """Keep at most k indices, dropping the lowest-scored first and, on ties, the largest index."""
    C = list(C)
    excess = len(C) - k
    if excess <= 0:
        return frozenset(C)
    score = score or {}
    order = sorted(C, key=lambda j: (score.get(j, 0), -j))
    return frozenset(C) - frozenset(order[:excess])


def column_scores(A: SensingMatrix, y: MeasurementVector) -> tuple[list[int], int]:
    """|B_j ∩ supp(y)| over the union-free block, and its column weight d."""
    block = A.union_free_block()
    d = block.d
    if d is None:
        raise PreconditionError("union-free block must have uniform column weight")
    hits = y.support
    return [len(col & hits) for col in block.columns], d


def decode_approximate(A: SensingMatrix, y: MeasurementVector, k: int, eps) -> RecoveryReport:
    """Keep the columns with at least half their rows measuring nonzero, then trim to k."""
    _check(A, y, THM1)
    scores, d = column_scores(A, y)
    C = [j for j, s in enumerate(scores) if 2 * s >= d]
    kept = _delete_excess(C, k, dict(enumerate(scores)))
    return RecoveryReport(kept, regime=THM1, k=k, eps=as_fraction(eps))


def decode_superset(
    A: SensingMatrix, y: MeasurementVector, k: int, eps, *, strict_threshold: bool = True
) -> RecoveryReport:
    """Two-stage superset decoder.

    Stage one scans the union-free block (more than half the rows nonzero by
    default; ``strict_threshold=False`` switches to at least half). Stage two
    deletes the support of every disjunct row that avoids the stage-one set
    and whose whole power-row group measured zero.
    """
    _check(A, y, THM3)
    scores, d = column_scores(A, y)
    if strict_threshold:
        C = [j for j, s in enumerate(scores) if 2 * s > d]
    else:
        C = [j for j, s in enumerate(scores) if 2 * s >= d]
    C = _delete_excess(C, k, dict(enumerate(scores)))
    survivors = set(range(A.n))
    for supp, idx in A.groups():
        if supp.isdisjoint(C) and all(y.entries[i] == 0 for i in idx):
            survivors -= supp
    return RecoveryReport(frozenset(survivors) | C, regime=THM3, k=k, eps=as_fraction(eps))


def _zero_groups_removed(A: SensingMatrix, y: MeasurementVector) -> frozenset[int]:
    C = set(range(A.n))
    for supp, idx in A.groups():
        if all(y.entries[i] == 0 for i in idx):
            C -= supp
    return frozenset(C)


def decode_superset_bounded_range(A: SensingMatrix, y: MeasurementVector, k: int, eps, eta) -> RecoveryReport:
    _check(A, y, THM4)
    eta = as_fraction(eta)
    base = A.param("base")
    if base is not None and base <= 1 + eta:
        raise PreconditionError(f"matrix base {base} does not exceed 1 + eta = {1 + eta}")
    return RecoveryReport(_zero_groups_removed(A, y), regime=THM4, k=k, eps=as_fraction(eps))


def decode_superset_same_sign(A: SensingMatrix, y: MeasurementVector, k: int, eps, R: int) -> RecoveryReport:
    _check(A, y, THM5)
    if A.group_size < 2 * R + 1:
        raise PreconditionError(f"{A.group_size} power rows per group cannot handle R = {R}")
    return RecoveryReport(_zero_groups_removed(A, y), regime=THM5, k=k, eps=as_fraction(eps))


def superset_to_approximate(
    S: Iterable[int], k: int, eps, score: Mapping[int, int] | None = None
) -> frozenset[int]:
    """Trim a superset answer to an approximate-support answer of size <= k."""
    S = frozenset(S)
    if len(S) > k + as_fraction(eps) * k:
        raise ContractViolationError(f"|S| = {len(S)} exceeds k + eps*k = {k + as_fraction(eps) * k}")
    return _delete_excess(S, k, score)


# -- brute-force L0 decoder for Gaussian measurements -------------------------


def l0_candidate_count(n: int, k: int) -> int:
    return sum(math.comb(n, s) * 2**s for s in range(k + 1))


def _feasible_point(
    rows: np.ndarray, y: np.ndarray, signs: tuple[int, ...], eta: float, margin: float
) -> Optional[np.ndarray]:
    """Solve for x on a fixed support with prescribed signs, or return None."""
    s = rows.shape[1]
    nonzero = y != 0
    A_ub = -(y[nonzero, None] * rows[nonzero])
    b_ub = np.full(A_ub.shape[0], -margin)
    A_eq = rows[~nonzero] if (~nonzero).any() else None
    b_eq = np.zeros(A_eq.shape[0]) if A_eq is not None else None
    bounds = [(1.0, eta) if sg > 0 else (-eta, -1.0) for sg in signs]
    res = linprog(np.zeros(s), A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=b_eq,
                  bounds=bounds, method="highs")
    if res.status != 0:
        return None
    x = np.array([np.clip(v, 1.0, eta) if sg > 0 else np.clip(v, -eta, -1.0)
                  for v, sg in zip(res.x, signs)])
    v = rows @ x
    if np.any(np.sign(v[nonzero]) != y[nonzero]):
        return None
    return x


def decode_l0_bruteforce(
    A: SensingMatrix,
    y: MeasurementVector,
    k: int,
    eta,
    *,
    margin: float = L0_MARGIN,
    cap: int = L0_CANDIDATE_CAP,
) -> SparseSignal:
    """Sparsest x with sign(Ax) = y and dynamic range <= eta, by enumeration.

    Supports are tried by increasing size, then lexicographically, and sign
    patterns in product order. Scale invariance lets the smallest on-support
    magnitude be pinned to 1, which turns the range bound into the box
    1 <= sign_j * x_j <= eta; strict signs become y_i <a_i, x> >= margin.
    """
    if A.regime != GAUSSIAN:
        raise RegimeMismatchError(f"decoder expects a gaussian matrix, got {A.regime}")
    if len(y) != A.m:
        raise DimensionMismatchError(f"{len(y)} measurements for a matrix with {A.m} rows")
    count = l0_candidate_count(A.n, k)
    if count > cap:
        raise InstanceTooLargeError(count, cap, "candidates")
    eta_f = float(as_fraction(eta))
    zero = SparseSignal.zero(A.n)
    if measure(A, zero, y.mode) == y:
        return zero
    dense = A.dense()
    yv = np.array(y.entries, dtype=float)
    for size in range(1, k + 1):
        for supp in combinations(range(A.n), size):
            cols = dense[:, supp]
            for signs in product((1, -1), repeat=size):
                x = _feasible_point(cols, yv, signs, eta_f, margin)
                if x is not None:
                    return SparseSignal(A.n, {j: Fraction(float(v)) for j, v in zip(supp, x)})
    raise DecodingFailedError("no sparse signal within the range bound matches the measurements")
