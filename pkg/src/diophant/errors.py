"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: validation problems exit 1, parse
problems exit 2 and :class:`InternalInconsistency` exits 3.
"""

from __future__ import annotations


class DiophantError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class DomainError(DiophantError, ValueError):
    pass


class RingMismatch(DiophantError, ValueError):
    pass


class ArityMismatch(DiophantError, ValueError):
    pass


class NonInjectiveMap(DiophantError, ValueError):
    pass


class IndexOutOfRange(DiophantError, IndexError):
    pass


class BadIndexSet(DiophantError, ValueError):
    pass


class BothZero(DomainError):
    pass


class PeriodExhausted(DiophantError, RuntimeError):
    exit_code = 3


class InternalInconsistency(DiophantError, RuntimeError):
    """A verified construction failed its own check. Always a bug."""

    exit_code = 3


class ParseError(DiophantError, ValueError):
    """Malformed expression or formula text, with a 1-based position."""

    exit_code = 2

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class UnknownVariable(ParseError):
    pass


class RingLiteralError(ParseError):
    pass


class UnsupportedConnective(DiophantError, ValueError):
    pass


class HypothesisFailure(DiophantError, ValueError):
    def __init__(self, hypothesis: str, evidence=None):
        super().__init__(f"hypothesis failed: {hypothesis}")
        self.hypothesis = hypothesis
        self.evidence = evidence


class ExhaustionBudgetExceeded(DiophantError, RuntimeError):
    def __init__(self, message: str, sampled_fraction: float):
        super().__init__(message)
        self.sampled_fraction = sampled_fraction


class MalformedTemplate(DiophantError, ValueError):
    pass
