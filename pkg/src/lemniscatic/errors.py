"""Exception hierarchy shared by every module of the package."""


class LemniscaticError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(LemniscaticError, ValueError):
    """An argument lies outside the region where an operation is defined."""


class AccuracyError(LemniscaticError, ArithmeticError):
    """A numerical procedure could not reach the requested accuracy.

    ``estimate`` and ``error`` carry the best value obtained so far and its
    estimated absolute error.
    """

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class PoleProximity(LemniscaticError, ArithmeticError):
    """Evaluation requested too close to a pole.

    ``point`` is the requested argument and ``nearest`` the offending
    singular point.
    """

    def __init__(self, message, point, nearest):
        super().__init__(message)
        self.point = point
        self.nearest = nearest


class BranchPointProximity(PoleProximity):
    """A continuation path comes too close to a branch point of s or c."""


class DegenerateFormulaError(LemniscaticError, ArithmeticError):
    """An addition-type formula was applied in its degenerate case."""


class ConsistencyError(LemniscaticError, RuntimeError):
    """Two independent computations of the same constant disagree."""


class UnknownSuiteError(LemniscaticError, ValueError):
    """A verification suite name is not recognised."""
