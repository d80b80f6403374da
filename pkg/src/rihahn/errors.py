"""Exception hierarchy shared by all modules."""


class RIHahnError(Exception):
    """Base class for library errors."""


class InvalidParameters(RIHahnError, ValueError):
    """Parameters hit a pole configuration excluded by the validity predicate."""


class NonTerminating(RIHahnError, ValueError):
    """No numerator parameter forces a terminating series."""


class PoleInDenominator(RIHahnError, ZeroDivisionError):
    """A denominator Pochhammer symbol vanishes inside the summation range."""


class BoundaryLeak(RIHahnError, IndexError):
    """A nonzero shift coefficient addresses a point outside the grid."""


class ZeroDivisor(RIHahnError, ZeroDivisionError):
    """An identity check would have to divide by an exact zero."""
