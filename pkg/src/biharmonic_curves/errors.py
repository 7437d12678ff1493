"""Exception hierarchy shared by all modules."""


class GeometryError(ValueError):
    """Base class for every domain error raised by this package."""


class ZeroVector(GeometryError):
    pass


class NullVector(GeometryError):
    pass


class DegenerateStep(GeometryError):
    """An orthonormalization residual was null (or zero) within tolerance."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class OutOfDomain(GeometryError):
    pass


class InsufficientSamples(GeometryError):
    """A finite-difference stencil would run past the sample grid."""


class TooFewSamples(GeometryError):
    pass


class NumericalFailure(GeometryError):
    """Frame construction failed for a geometric (not input) reason."""


class GeodesicPoint(NumericalFailure):
    pass


class NullFrameVector(NumericalFailure):
    """A derived Frenet vector is null.

    ``index`` names the offending frame slot: 1 for N, 2 for B1.
    """

    def __init__(self, message, index=None, s=None):
        super().__init__(message)
        self.index = index
        self.s = s

    @property
    def case(self):
        return {1: "I5", 2: "I3"}.get(self.index)


class MixedCase(NumericalFailure):
    pass


class DimensionTooSmall(GeometryError):
    pass


class InvalidCoefficients(GeometryError):
    pass


class GridTooSmall(GeometryError):
    pass


class NotRealizable(GeometryError):
    pass
