"""Exception hierarchy shared by every msrcode module."""


class MSRError(Exception):
    """Base class for all library errors."""


class NotPrimePower(MSRError, ValueError):
    pass


class TooLarge(MSRError, ValueError):
    pass


class DivisionByZero(MSRError, ZeroDivisionError):
    pass


class DimensionMismatch(MSRError, ValueError):
    pass


class Singular(MSRError, ArithmeticError):
    """Elimination found no pivot: the matrix is not invertible."""


class OutOfRange(MSRError, ValueError):
    pass


class OddLength(MSRError, ValueError):
    """The construction needs an even code length; use shortening instead."""


class BadDegree(MSRError, ValueError):
    pass


class FieldTooSmall(MSRError, ValueError):
    pass


class BadHelperSet(MSRError, ValueError):
    pass


class InsufficientNodes(MSRError, ValueError):
    pass


class InconsistentNodes(MSRError, ValueError):
    """Surviving node contents do not belong to one codeword."""


class ContainerError(MSRError, ValueError):
    pass


class InvalidCoefficients(MSRError, ValueError):
    """A coefficient table breaks the distinctness conditions the code relies on."""
