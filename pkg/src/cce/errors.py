"""Exception types raised by the cce package."""


class CCEError(Exception):
    """Base class for all errors raised by cce."""


class InputError(CCEError, ValueError):
    """Malformed or non-finite input data."""


class ValidationError(InputError):
    """Input data violates a structural rule (symmetry, sign, shape)."""


class ParameterError(CCEError, ValueError):
    """A numeric parameter is outside its allowed range."""
