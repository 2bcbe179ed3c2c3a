"""Exception types raised across the package."""


class CoherenceError(ValueError):
    """Base class for all errors raised by cohdetect."""


class NonHermitian(CoherenceError):
    pass


# the witness module reports the same failure under this name
NotHermitian = NonHermitian


class NoConvergence(CoherenceError, ArithmeticError):
    pass


class DimMismatch(CoherenceError):
    pass


class InvalidPermutation(CoherenceError):
    pass


class OutOfRange(CoherenceError):
    pass


class InvalidState(CoherenceError):
    """Matrix fails the density-matrix checks (trace, positivity, finiteness)."""


class DiagonalNotZero(CoherenceError):
    pass


class NegativeOnIncoherent(CoherenceError):
    pass


class NonRealTrace(CoherenceError):
    pass


class DegenerateSpectrum(CoherenceError):
    """Witness spectrum collapses to a point; it carries no information."""


class WiringInvalid(CoherenceError):
    pass


class DimTooLarge(CoherenceError):
    pass


class NoSignChange(CoherenceError):
    pass


class ParseError(CoherenceError):
    pass
