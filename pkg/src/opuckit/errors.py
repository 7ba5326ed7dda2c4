"""Exception types shared across the package."""


class InvalidMeasureError(ValueError):
    """Parameters do not describe a positive measure on the circle."""


class UnsupportedOperationError(NotImplementedError):
    pass


class DomainError(ValueError):
    pass


class ConsistencyError(RuntimeError):
    """An internal identity failed beyond its tolerance."""


class ConventionError(ConsistencyError):
    """A normalization convention produced a non-real parameter."""
