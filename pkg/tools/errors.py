"""Exception hierarchy shared by the library and the CLI.

Each error family maps to one CLI exit code:
invalid input exits 2, numerical failure exits 3, a violated bound exits 1.
"""

EXIT_OK = 0
EXIT_ASSERTION = 1
EXIT_INVALID_INPUT = 2
EXIT_NUMERICAL = 3


class AsymptoticsError(Exception):
    """Base class for every error raised by this package"""

    exit_code = EXIT_NUMERICAL


class InvalidInputError(AsymptoticsError, ValueError):
    """Parameters violate a documented invariant"""

    exit_code = EXIT_INVALID_INPUT


class DomainError(InvalidInputError):
    """A parameter lies outside the domain of a formula (e.g. c <= 0)"""


class PreconditionError(InvalidInputError):
    """An operation precondition does not hold (tolerance range, grid shape)"""


class OverflowGuardError(InvalidInputError):
    """Direct J quadrature requested where e^{sT^2} is not representable"""

    def __init__(self, message: str = "", exponent: float = None, guard: float = None):
        super().__init__(message)
        self.exponent = exponent
        self.guard = guard


class OutOfRegimeError(InvalidInputError):
    """s is too small for the epsilon splitting (epsilon >= T)"""


class NumericalError(AsymptoticsError, ArithmeticError):
    """A numerical procedure failed to deliver a trustworthy value"""

    exit_code = EXIT_NUMERICAL


class QuadratureBudgetError(NumericalError):
    """Adaptive subdivision exhausted its evaluation budget"""

    def __init__(self, message: str = "", evaluations: int = 0,
                 abs_err: float = None, tolerance: float = None):
        super().__init__(message)
        self.evaluations = evaluations
        self.abs_err = abs_err
        self.tolerance = tolerance


class SeriesConvergenceError(NumericalError):
    """A series hit its term cap or overflowed"""


class RepresentationOverflowError(NumericalError):
    """A log-scale value does not fit in an ordinary float"""


class FitError(NumericalError):
    """Too few usable points for a convergence-order fit"""


class SweepPointError(NumericalError):
    """An oracle failure inside a sweep, annotated with the offending s"""

    def __init__(self, message: str = "", s: float = None, cause: Exception = None):
        super().__init__(message)
        self.s = s
        self.cause = cause
        if cause is not None and hasattr(cause, "exit_code"):
            self.exit_code = cause.exit_code


class BoundViolation(AsymptoticsError, AssertionError):
    """A verified inequality does not hold"""

    exit_code = EXIT_ASSERTION

    def __init__(self, message: str = "", lhs: float = None, bound: float = None):
        super().__init__(message)
        self.lhs = lhs
        self.bound = bound


def exit_code_for(error: BaseException) -> int:
    """Map an exception to the CLI exit code"""
    return getattr(error, "exit_code", EXIT_NUMERICAL)
