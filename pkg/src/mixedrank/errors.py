"""Exception types shared across the package."""

from __future__ import annotations


class MixedRankError(Exception):
    """Base class for all package errors."""


class InvalidGraph(MixedRankError, ValueError):
    pass


class BudgetExceeded(MixedRankError):
    """An exhaustive search grew past its configured cap."""

    def __init__(self, what: str, cap: int):
        super().__init__(f"{what} exceeded budget of {cap}")
        self.what = what
        self.cap = cap


class CycleBudgetExceeded(BudgetExceeded):
    pass


class SearchBudgetExceeded(BudgetExceeded):
    pass


class EnumerationBudgetExceeded(BudgetExceeded):
    pass


class NotPendant(MixedRankError, ValueError):
    pass


class CyclesNotDisjoint(MixedRankError, ValueError):
    pass


class InvalidParameters(MixedRankError, ValueError):
    pass


class WouldCreateMultiedge(MixedRankError, ValueError):
    pass


class HasUndirectedEdge(MixedRankError, ValueError):
    pass


class NonRealCoefficient(MixedRankError, ArithmeticError):
    pass


class ParseError(MixedRankError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class DuplicateEdge(ParseError):
    pass


class VertexOutOfRange(ParseError):
    pass
