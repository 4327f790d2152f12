"""Exception hierarchy shared across the toolkit."""


class QmurError(Exception):
    """Base class for all toolkit errors."""


class DimensionError(QmurError):
    """Matrix or subsystem dimensions are inconsistent."""


class ShapeError(QmurError):
    """Operator lacks a required structural property (e.g. Hermiticity)."""


class PositivityError(QmurError):
    """Operator has a genuinely negative eigenvalue (beyond roundoff)."""


class NormalizationError(QmurError):
    """State trace is outside the allowed range for the operation."""


class ParameterError(QmurError):
    """Scalar parameter out of its documented range."""


class NumericError(QmurError):
    """An iterative routine failed to converge."""


class DegenerateInputError(QmurError):
    """Input is degenerate (e.g. the zero operator)."""


class UnsupportedScaleError(QmurError):
    """Requested dimension exceeds the supported range of this routine."""


class FileFormatError(QmurError):
    """A state or basis file is malformed or violates invariants."""
