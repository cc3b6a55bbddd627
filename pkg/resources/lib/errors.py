class JsnrError(Exception):
    """Base class for all errors raised by the library."""


class ZeroVector(JsnrError, ValueError):
    pass


class DimensionMismatch(JsnrError, ValueError):
    pass


class NotHermitian(JsnrError, ValueError):
    pass


class LinearlyDependent(JsnrError, ValueError):
    pass


class UnsupportedDims(JsnrError, ValueError):
    pass


class InconsistentRegions(JsnrError, ValueError):
    pass


class NotProductState(JsnrError, ValueError):
    """An operation needs the local factors of a product state."""


class InvalidDensityOperator(JsnrError, ValueError):
    pass


class InvalidParameter(JsnrError, ValueError):
    """A numerical option is out of range, such as a non-finite direction."""
