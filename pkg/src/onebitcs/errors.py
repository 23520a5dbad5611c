"""Exception types raised across the package."""

from __future__ import annotations


class OneBitCSError(Exception):
    """Base class for every error raised by :mod:`onebitcs`."""


class InconsistentPairError(OneBitCSError, ValueError):
    pass


class UndefinedForZeroError(OneBitCSError, ValueError):
    pass


class InvalidBaseError(OneBitCSError, ValueError):
    pass


class PreconditionError(OneBitCSError, ValueError):
    pass


class DimensionMismatchError(OneBitCSError, ValueError):
    pass


class RegimeMismatchError(OneBitCSError, ValueError):
    pass


class NonUniformWeightError(OneBitCSError, ValueError):
    pass


class ContractViolationError(OneBitCSError, ValueError):
    pass


class InstanceTooLargeError(OneBitCSError):
    """An exhaustive enumeration would exceed its configured cap."""

    def __init__(self, count: int, cap: int, what: str = "pairs"):
        super().__init__(f"{count} {what} exceeds the enumeration cap of {cap}")
        self.count = count
        self.cap = cap


class ConstructionFailedError(OneBitCSError):
    def __init__(self, attempts: int, detail: str = ""):
        msg = f"no certified design after {attempts} attempts"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
        self.attempts = attempts


class DecodingFailedError(OneBitCSError):
    pass


class ResampleCapExceededError(OneBitCSError):
    pass


class FormatError(OneBitCSError, ValueError):
    """A text file does not follow the expected layout."""


class TrialError(OneBitCSError):
    """An experiment trial failed; ``trial`` is its index and ``__cause__`` the original error."""

    def __init__(self, trial: int, cause: Exception):
        super().__init__(f"trial {trial}: {cause}")
        self.trial = trial
