"""Exception types raised across the package."""

from __future__ import annotations


class QMGSError(Exception):
    """Base class for all errors raised by :mod:`qmgs`."""


class ValidationError(QMGSError, ValueError):
    """Input parsed correctly but does not describe a valid exchange matrix."""


class NotSkewSymmetrizable(ValidationError):
    """The matrix admits no positive diagonal symmetrizer.

    ``where`` holds the offending index pair ``(i, j)`` or, for an
    inconsistent cycle of ratios, the closing edge of that cycle.
    """

    def __init__(self, message: str, where: tuple[int, ...] | None = None):
        super().__init__(message)
        self.where = where


class MutationOverflowError(QMGSError, OverflowError):
    """An entry left the signed 64-bit range."""


class SizeLimitExceeded(QMGSError, ValueError):
    pass


class SignCoherenceViolation(QMGSError, ArithmeticError):
    """A c-vector is zero or has entries of both signs.

    ``path`` is the mutation sequence (0-based) that produced the bad seed,
    when known.
    """

    def __init__(self, message: str, path: tuple[int, ...] | None = None):
        if path is not None:
            message = f"{message} (mutation path {list(path)})"
        super().__init__(message)
        self.path = path


class NotGreenAtStep(QMGSError, ValueError):
    """A green sequence tried to mutate a red vertex.

    ``step`` is 1-based, counting positions in the sequence.
    """

    def __init__(self, step: int, vertex: int):
        super().__init__(f"vertex {vertex + 1} is not green at step {step}")
        self.step = step
        self.vertex = vertex


class PreconditionFailed(QMGSError, ValueError):
    pass


class NotInClass(QMGSError, ValueError):
    pass


class UnknownName(QMGSError, KeyError):
    pass


class ParseError(QMGSError, ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
