"""Exception types shared across the package."""


class ParameterError(ValueError):
    """User-supplied parameters are malformed or outside the supported range."""


class InvalidHingeError(ValueError):
    """A hinge reference does not address a current occurrence of the amalgam."""


class InternalInvariantError(RuntimeError):
    """A construction-time invariant failed.  Indicates a bug, not bad input."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
