"""Exception types raised across the package."""


class EBRError(ValueError):
    """Base class for all validation errors raised by :mod:`ebr`."""


class ZeroVector(EBRError):
    pass


class DimMismatch(EBRError):
    pass


class NotOrthonormal(EBRError):
    pass


class OutsideSpan(EBRError):
    pass


class NegativeProbability(EBRError):
    pass


class DegenerateSimplex(EBRError):
    pass


class AllExcluded(EBRError):
    pass


class ZeroProbabilityBranch(EBRError):
    pass


class EmptyInterval(EBRError):
    pass


class NotUnitary(EBRError):
    pass


class OddDimension(EBRError):
    pass


class InvalidPartition(EBRError):
    pass
