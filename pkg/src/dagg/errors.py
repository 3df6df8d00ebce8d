"""Exception hierarchy shared by all modules."""


class DaggError(Exception):
    """Base class for every error raised by this package."""


class SingularMatrix(DaggError, ArithmeticError):
    pass


class RankDeficient(DaggError):
    pass


class DimensionMismatch(DaggError, ValueError):
    pass


class NotPointed(DaggError):
    """The cone generated by the columns contains a line."""


class InfeasibleByLattice(DaggError):
    """b is not in the integer lattice spanned by the columns of A."""


class UnsupportedRegime(DaggError):
    pass


class WitnessNotFound(DaggError):
    pass


class WindowTooLarge(DaggError):
    pass


class InfiniteCount(DaggError):
    pass


class InvalidCoefficients(DaggError, ValueError):
    pass


class NonPositiveCoefficient(InvalidCoefficients):
    pass


class DegreeOverflow(DaggError):
    pass


class PrecisionLoss(DaggError):
    """Floating-point error bound too large to round to an exact count."""


class CrossCheckMismatch(DaggError, AssertionError):
    pass
