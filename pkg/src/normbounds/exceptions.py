"""Exception hierarchy.

Every error raised by the library derives from :class:`NormBoundsError`,
which is itself a :class:`ValueError` so callers validating input can catch
the builtin type.
"""


class NormBoundsError(ValueError):
    """Base class for all library errors."""


class DomainError(NormBoundsError):
    """An argument lies outside the domain of a scalar function."""


class InvalidSigma(NormBoundsError):
    pass


class EmptyDistribution(NormBoundsError):
    pass


class NegativeMass(NormBoundsError):
    pass


class NotNormalized(NormBoundsError):
    pass


class InvalidGrid(NormBoundsError):
    pass


class Divergent(NormBoundsError):
    """The requested series diverges (the l^sigma criterion fails)."""


class NotSquare(NormBoundsError):
    pass


class NotHermitian(NormBoundsError):
    pass


class TraceNotOne(NormBoundsError):
    pass


class NotPSD(NormBoundsError):
    pass


class NoConvergence(NormBoundsError):
    pass


class EmptyInput(NormBoundsError):
    pass
