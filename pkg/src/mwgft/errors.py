"""Exception types shared across the package.

Every error raised deliberately by this package derives from
:class:`MwgftError`, so callers can catch one base class.  Errors are split
into two rough families: *validation* errors (malformed input, mismatched
shapes, bad parameters) and *numerical* errors (conditions that only show up
once you compute: degenerate denominators, failed eigensolves, window
families that do not form a frame).  The command line tool maps the first
family to exit code 1 and the second to exit code 2.
"""

from __future__ import annotations


class MwgftError(Exception):
    """Base class for all errors raised by this package."""


# ---------------------------------------------------------------------------
# validation errors
# ---------------------------------------------------------------------------

class NegativeWeight(MwgftError):
    """An edge weight is negative."""


class SelfLoop(MwgftError):
    """An edge connects a vertex to itself."""


class DuplicateEdgeConflict(MwgftError):
    """The same vertex pair appears twice with different weights."""


class Disconnected(MwgftError):
    """The graph has more than one connected component."""


class InvalidSize(MwgftError):
    """A size argument is out of its allowed range."""


class ParseError(MwgftError):
    """A text input (edge list, CSV, config) could not be parsed.

    When the offending line is known its 1-based number is stored on
    ``line``.
    """

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ZeroDegree(MwgftError):
    """A vertex has zero degree where a positive degree is required."""


class IndexOutOfRange(MwgftError):
    """A vertex or frequency index falls outside the valid range."""


class DimensionMismatch(MwgftError):
    """Array shapes are inconsistent with each other or with the graph."""


class InvalidParameter(MwgftError):
    """A scalar parameter is outside its valid range."""


class FingerprintMismatch(MwgftError):
    """Stored coefficients were produced against a different spectral basis."""


# ---------------------------------------------------------------------------
# numerical errors
# ---------------------------------------------------------------------------

class EigSolverFailure(MwgftError):
    """The symmetric eigensolver did not converge."""


class MultipleZeroEigenvalues(MwgftError):
    """More than one eigenvalue is zero within tolerance.

    For a Laplacian this means the graph is disconnected, so the transform's
    reconstruction guarantees no longer apply.
    """


class DegenerateCoverage(MwgftError):
    """The stacked energy response of a window family vanishes somewhere."""


class DegenerateDenominator(MwgftError):
    """The reconstruction denominator vanishes at one or more vertices.

    ``vertices`` holds the 1-based indices where the denominator magnitude
    fell at or below the tolerance.
    """

    def __init__(self, message: str, vertices=()):
        vertices = tuple(int(v) for v in vertices)
        if vertices:
            message = f"{message} (vertices: {', '.join(map(str, vertices))})"
        super().__init__(message)
        self.vertices = vertices


class NotAFrame(MwgftError):
    """The candidate lower frame bound is zero within tolerance."""
