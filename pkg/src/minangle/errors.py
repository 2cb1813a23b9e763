"""Exception hierarchy for the minangle pipeline.

Two branches matter to callers: ``DataError`` covers malformed or
insufficient input (CLI exit code 3), ``NumericalError`` covers failures
that arise inside a numerical procedure (CLI exit code 4).
"""


class MinAngleError(Exception):
    """Base class for all minangle errors."""


class DataError(MinAngleError):
    """Invalid, empty, or inconsistent input data."""


class NumericalError(MinAngleError):
    """A numerical procedure could not produce a meaningful result."""


class AllTermsFiltered(DataError):
    """No vocabulary term survived document-frequency filtering."""


class EmptyMatrix(DataError):
    """Every document was dropped; no matrix column remains."""


class EmptyInput(DataError):
    """An operation received an empty collection."""


class LengthMismatch(DataError):
    """Paired label sequences have different lengths."""


class NonFiniteInput(DataError):
    """Input matrix contains NaN or infinite entries."""


class IsPivotColumn(DataError):
    """Coefficients were requested for a pivot column."""


class ZeroBlock(NumericalError):
    """A component's column block is identically zero."""


class AmbientDimensionMismatch(DataError):
    """Two bases live in spaces of different ambient dimension."""


class TooFewPoints(DataError):
    """Not enough points for the requested neighbour index or cluster count."""


class DegenerateAffinity(NumericalError):
    """Affinity matrix carries no usable structure (all zero)."""


class MissingComponentLabel(DataError):
    """A component id has no cluster label to propagate."""


class InvalidSpec(DataError):
    """A synthetic-data specification violates its invariants."""
