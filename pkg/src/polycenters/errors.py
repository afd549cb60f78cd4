"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class PolycentersError(Exception):
    """Base class for every error raised by the package."""


class ParseError(PolycentersError, ValueError):
    """Malformed polynomial text.

    Attributes
    ----------
    line, column : int
        1-based position of the offending character.
    """

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class NotPrimitive(PolycentersError):
    """The two components of a field share a non-constant factor."""

    def __init__(self, factor):
        super().__init__(f"components share the factor {factor}")
        self.factor = factor


class CommonComponent(NotPrimitive):
    """The set of zeros of the field contains a curve."""


class Degenerate(PolycentersError):
    """A cluster of zeros could not be resolved at the working precision."""


class LineAtInfinityDegenerate(PolycentersError):
    """Every point at infinity is a zero of the compactified field."""


class RadiusUnsafe(PolycentersError):
    """The winding circle passes too close to a zero of the field."""


class NonConvergent(PolycentersError):
    """Adaptive sampling hit its cap before the winding number stabilised."""


class Inconsistent(PolycentersError):
    """The exponent relations of a Kolmogorov system have no solution."""


class InvalidSpec(PolycentersError, ValueError):
    """Parameters outside the admissible range."""


class UnknownExample(PolycentersError, KeyError):
    """Requested a built-in example that does not exist."""


class InvalidConfiguration(PolycentersError, ValueError):
    """Quadrant counts that cannot describe a configuration."""
