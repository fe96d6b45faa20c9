"""Exception hierarchy shared across the package.

Two broad families matter to callers (and to the CLI exit-code mapping):
``DataError`` for malformed or inconsistent input, ``DegeneracyError`` for
inputs that are structurally fine but numerically undefined (constant
signals, zero resultants, missing reference energy).
"""


class PhasechainError(Exception):
    """Base class for all package errors."""


class DataError(PhasechainError):
    """Input data is malformed, inconsistent, or incomplete."""


class ParseError(DataError):
    """A file could not be parsed in the declared format."""


class ShapeError(DataError):
    """Array/record dimensions are inconsistent."""


class UnknownLabelError(DataError):
    """A requested point label is not present."""


class MissingStageError(DataError):
    """A pipeline stage's output artifact is required but absent."""


class DegeneracyError(PhasechainError):
    """A quantity is numerically undefined for this input."""


class ConstantSeriesError(DegeneracyError):
    """A series that must vary is constant."""


class UndefinedReferenceError(DegeneracyError):
    """The reference variable has no usable amplitude/variance."""
