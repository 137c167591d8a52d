"""Exception hierarchy shared by every module of :mod:`planefol`."""

from __future__ import annotations


class PlanefolError(Exception):
    """Base class for domain errors (mapped to exit code 2 by the CLI)."""

    def __init__(self, message: str, *, chart_path: str | None = None):
        super().__init__(message)
        self.chart_path = chart_path

    def __str__(self) -> str:
        msg = super().__str__()
        if self.chart_path:
            return f"{msg} [chart: {self.chart_path}]"
        return msg


class UnsupportedExtensionDegree(PlanefolError):
    """An algebraic number would need an extension outside the supported tower."""

    def __init__(self, message: str, *, factors=(), chart_path: str | None = None):
        super().__init__(message, chart_path=chart_path)
        self.factors = tuple(factors)


class TowerDepthExceeded(UnsupportedExtensionDegree):
    """Adjoining another square root would exceed degree 4 over Q(i)."""


class ResolutionDepthExceeded(PlanefolError):
    pass


class CurveNotInvariant(PlanefolError):
    pass


class NonIsolatedResidue(PlanefolError):
    pass


class NoSeparatrixCandidate(PlanefolError):
    pass


class NoRegularRamificationFound(PlanefolError):
    def __init__(self, message: str, *, best=None, chart_path: str | None = None):
        super().__init__(message, chart_path=chart_path)
        self.best = best


class ParseError(Exception):
    """Malformed input text; carries a 1-based line and column."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class NonZeroConstantTerm(ParseError):
    pass
