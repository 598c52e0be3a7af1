"""Exception types raised by superpos."""


class SuperposError(ValueError):
    """Base class for all validation errors in this package."""


class NotSquare(SuperposError):
    pass


class NotHermitian(SuperposError):
    pass


class TraceDeviation(SuperposError):
    pass


class NegativeEigenvalue(SuperposError):
    pass


class DimensionMismatch(SuperposError):
    pass


class IndexOutOfRange(SuperposError, IndexError):
    pass


class NotAProjector(SuperposError):
    pass


class NotOrthogonal(SuperposError):
    pass


class IncompleteResolution(SuperposError):
    pass


class KOutOfRange(SuperposError):
    pass


class NotBipartite(SuperposError):
    pass


class InvalidSpectrum(SuperposError):
    pass


class TargetTooLarge(SuperposError):
    pass


class UnsupportedStructure(SuperposError):
    pass


class SupportFailure(SuperposError):
    pass


class NotTracePreserving(SuperposError):
    pass


class NotTracePreservingOnSector(NotTracePreserving):
    pass


class CoefficientMatrixTooLarge(SuperposError):
    pass


class InvalidRates(SuperposError):
    pass


class ValidationFailure(SuperposError):
    """An evolved state drifted outside the set of density operators."""


class NotUnitary(SuperposError):
    pass


class NotProjector(SuperposError):
    pass


class ConvergenceWarning(UserWarning):
    """Emitted when the formation optimizer stops before its tolerance is met."""
