"""Exception types raised by the univalence toolkit."""


class UnivalenceError(Exception):
    """Base class for all library errors."""


class NonUnitConstantTerm(UnivalenceError, ValueError):
    """A series power was requested for a series whose constant term is not 1."""


class OutsideDisk(UnivalenceError, ValueError):
    """A point outside the open unit disk was supplied."""


class InvalidOrder(UnivalenceError, ValueError):
    """An operator order outside its admissible range."""


class ZeroBeta(UnivalenceError, ValueError):
    """The integral operator exponent is zero."""


class NotNormalized(UnivalenceError, ValueError):
    """A series expected in class A lacks f(0) = 0, f'(0) = 1."""


class BranchAmbiguity(UnivalenceError, ArithmeticError):
    """A tracked complex power came too close to zero to follow its branch."""


class SingularPoint(UnivalenceError, ArithmeticError):
    """A denominator in a criterion expression fell below the guard threshold.

    ``points`` holds every offending sample so callers can report them.
    """

    def __init__(self, message, points=()):
        super().__init__(message)
        self.points = list(points)


class DegenerateDenominator(UnivalenceError, ArithmeticError):
    """The time derivative of a Loewner chain vanished at a sample."""


class OnBoundaryValue(UnivalenceError, ValueError):
    """The sampled circle passes through the target value of a winding count."""
