"""Exception types shared across the package."""

from __future__ import annotations


class GkError(Exception):
    """Base class for every error raised by gknormal."""


class InvalidWordError(GkError, ValueError):
    """A generator index lies outside 1..k+1."""


class RankMismatchError(GkError, ValueError):
    """Two objects built over different ranks were combined."""


class GroupAxiomError(GkError, ValueError):
    """A multiplication table fails the group audit."""


class ClosureOverflowError(GkError):
    """Permutation closure grew past the configured size bound."""


class UnsupportedOrderError(GkError, ValueError):
    """Requested order is outside the hard-coded catalog."""


class InvalidFamilyError(GkError, ValueError):
    """A subset family violates its preconditions (empty or duplicate masks)."""


class ContractibleFamilyError(InvalidFamilyError):
    """A triple of masks is linearly dependent over GF(2)."""


class NotEpimorphismError(GkError, ValueError):
    """Generator images do not generate the target group."""


class BudgetExceededError(GkError):
    """The oracle would iterate more assignments than the budget allows.

    ``partial`` holds the descriptors of every target group that was scanned
    completely before the budget check failed.
    """

    def __init__(self, message: str, partial: frozenset = frozenset()):
        super().__init__(message)
        self.partial = partial
