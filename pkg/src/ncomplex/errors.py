"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class NComplexError(Exception):
    """Base class for all errors raised by :mod:`ncomplex`."""


class DimensionMismatch(NComplexError, ValueError):
    pass


class UnsupportedDomain(NComplexError, ValueError):
    pass


class NotASubobject(NComplexError, ValueError):
    pass


class AmplitudeOutOfRange(NComplexError, ValueError):
    pass


class ShapeMismatch(NComplexError, ValueError):
    """A differential or map component has the wrong shape at some degree."""

    def __init__(self, message: str, degree: int | None = None):
        super().__init__(message)
        self.degree = degree


class NotNilpotent(NComplexError, ValueError):
    """Raised when a complex fails ``d^N = 0``; ``degree`` is the first offending start."""

    def __init__(self, message: str, degree: int):
        super().__init__(message)
        self.degree = degree


class NotAChainMap(NComplexError, ValueError):
    def __init__(self, message: str, degree: int | None = None):
        super().__init__(message)
        self.degree = degree


class WitnessInvalid(NComplexError, ValueError):
    pass


class ClassCheckError(NComplexError, ValueError):
    pass


class ParseError(NComplexError, ValueError):
    """Malformed document text; carries an optional line number and degree."""

    def __init__(self, message: str, line: int | None = None, degree: int | None = None):
        parts = [message]
        if line is not None:
            parts.append(f"line {line}")
        if degree is not None:
            parts.append(f"degree {degree}")
        super().__init__(" at ".join(parts) if len(parts) > 1 else message)
        self.line = line
        self.degree = degree
