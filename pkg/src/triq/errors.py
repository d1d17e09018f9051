"""Exception hierarchy shared by all modules."""


class TriqError(Exception):
    """Base class for errors raised by this package."""


class InvalidInputError(TriqError, ValueError):
    """Input violates a documented precondition (shape, normalization, range)."""


class NumericalError(TriqError, ArithmeticError):
    """A numerical routine failed or produced an out-of-tolerance result."""


class DegenerateDenominatorError(NumericalError):
    """The conditional Tsallis denominator vanished."""


class VerificationError(NumericalError):
    """A claimed identity (eigenstate, +/- equivalence) did not hold."""
