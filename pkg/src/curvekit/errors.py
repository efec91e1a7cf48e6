"""Exception hierarchy for curvekit."""

from __future__ import annotations


class CurvekitError(Exception):
    """Base class for all library errors."""


class EmptyFacet(CurvekitError, ValueError):
    pass


class SimplexNotInComplex(CurvekitError, KeyError):
    pass


class VertexNotInGraph(CurvekitError, KeyError):
    pass


class SimplexBudgetExceeded(CurvekitError, RuntimeError):
    pass


class CoverViolation(CurvekitError):
    """The k-simplices do not saturate the complex.

    ``witnesses`` lists the simplices of dimension <= k that lie in no
    k-simplex.
    """

    def __init__(self, k: int, witnesses, message: str | None = None):
        self.k = k
        self.witnesses = [tuple(w) for w in witnesses]
        if message is None:
            shown = ", ".join(str(list(w)) for w in self.witnesses[:5])
            more = "" if len(self.witnesses) <= 5 else f" (+{len(self.witnesses) - 5} more)"
            message = f"G_{k} does not cover the complex; uncovered: {shown}{more}"
        super().__init__(message)


class GaussBonnetViolation(CurvekitError, ArithmeticError):
    pass


class NotA2Manifold(CurvekitError, ValueError):
    pass


class NotA3Manifold(CurvekitError, ValueError):
    pass


class NotLocallyInjective(CurvekitError, ValueError):
    pass


class EmptySample(CurvekitError, ValueError):
    pass


class SpectralRadiusExceeded(CurvekitError, ValueError):
    pass


class StepSizeTooLarge(CurvekitError, RuntimeError):
    pass


class TooManyEdges(CurvekitError, ValueError):
    pass


class DataIntegrity(CurvekitError, RuntimeError):
    pass


class ParseError(CurvekitError, ValueError):
    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}".strip())
