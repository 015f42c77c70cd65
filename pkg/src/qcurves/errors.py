"""Exception types shared across the package."""


class QuaternionDomainError(ValueError):
    """Operation undefined for the given quaternion (zero norm and friends)."""


class InvalidInputError(ValueError):
    """Malformed grids, mismatched lengths, out-of-range intervals."""


class IrregularCurveError(ValueError):
    """The tangent application vanishes (or nearly so) at some node."""

    def __init__(self, message, t=None):
        super().__init__(message)
        self.t = t


class DegenerateGeometryError(ValueError):
    """A derived curve collapses (evolute of a circle, evolvent of a line...)."""
