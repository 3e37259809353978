"""Exception types shared across the package."""

from __future__ import annotations


class BidiffError(Exception):
    """Base class for all package-specific errors."""


class DivisibilityViolation(BidiffError):
    """Raised when an exact polynomial division leaves a nonzero remainder.

    This always signals a bug or a falsified identity instance; callers must
    abort rather than truncate.
    """

    def __init__(self, message: str, remainder=None):
        super().__init__(message)
        self.remainder = remainder


class CovarianceViolation(BidiffError):
    """Raised when a covariance check fails; carries a counterexample."""

    def __init__(self, message: str, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class IdentityViolation(BidiffError):
    """Raised when an exact identity check fails; carries both sides."""

    def __init__(self, message: str, lhs=None, rhs=None):
        super().__init__(message)
        self.lhs = lhs
        self.rhs = rhs


class ParseError(BidiffError):
    """Raised on malformed input text; carries the offending position."""

    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos
