"""Exception types raised across the package."""


class AstrideError(Exception):
    """Base class for all package errors."""


class InvalidParameterError(AstrideError, ValueError):
    """A parameter is outside its admissible range."""


class ShapeError(AstrideError, ValueError):
    """Lengths or counts of inputs do not match."""


class FormatError(AstrideError, ValueError):
    """A data file is structurally malformed."""


class ParseError(FormatError):
    """A value in a data file could not be parsed."""


class EmptyInputError(FormatError):
    """A data file contains no records."""
