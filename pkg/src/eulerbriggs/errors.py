"""Exception hierarchy shared by every module.

The CLI maps ``EBCError`` subclasses to exit status 1 and argument problems
to exit status 2.
"""


class EBCError(Exception):
    """Base class for all library errors."""


class DomainError(EBCError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class UndefinedConstantError(DomainError):
    """gcd(q, P_Omega) > 1, so the constant gamma(Omega, a, q) is not defined."""


class ClosedFormUnavailableError(EBCError):
    """The closed form needs (a, q) = 1 or a = 0 mod q; use the oracle route."""


class DivergenceError(DomainError):
    pass


class HypothesisError(DomainError):
    pass


class InsufficientPrecisionError(EBCError):
    def __init__(self, message, required):
        super().__init__(message)
        self.required = required


class CrossCheckError(EBCError):
    """Two independent evaluations of a constant disagreed, even after retrying."""


class RelationSearchError(EBCError):
    pass
