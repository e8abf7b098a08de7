"""Exception hierarchy.

Every error raised on purpose by the package derives from AlgebraError, so
callers (the CLI in particular) can separate expected failures from bugs.
"""


class AlgebraError(Exception):
    """Base class for all package errors."""


class PreconditionError(AlgebraError, ValueError):
    """An operation was called outside its documented domain."""


class BudgetExceeded(AlgebraError):
    """An exhaustive computation would exceed its configured budget."""


# coefficient arithmetic

class NotPrime(PreconditionError):
    pass


class DivisionByZero(AlgebraError, ZeroDivisionError):
    pass


class ZeroDenominator(DivisionByZero):
    pass


class MixedContexts(AlgebraError, TypeError):
    """Operands live in different rings, fields or groups."""


# groups

class GroupValidationError(AlgebraError, ValueError):
    """A Cayley table (or structured group document) fails a group axiom."""


class NotAssociative(GroupValidationError):
    pass


class NoIdentity(GroupValidationError):
    pass


class NoInverse(GroupValidationError):
    pass


class NotAnAutomorphism(GroupValidationError):
    pass


class UnknownName(AlgebraError, KeyError):
    pass


class BadParams(PreconditionError):
    pass


class NotOfThisForm(AlgebraError):
    """The group is not a direct product K8 x E2; ``reason`` names the failed condition."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


# group rings and analysis

class NotAUnit(AlgebraError):
    pass


class OrderDivisibleByChar(PreconditionError):
    pass


class DegenerateTorsionElement(PreconditionError):
    pass


class TrivialGroup(PreconditionError):
    pass


class ParseError(AlgebraError, ValueError):
    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position
