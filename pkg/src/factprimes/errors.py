"""Exception hierarchy shared by all factprimes modules."""


class FactprimesError(Exception):
    """Base class for every error raised by this package."""


class DomainError(FactprimesError, ValueError):
    """An argument is outside the mathematical domain of the operation."""


class OutOfRangeError(FactprimesError, ValueError):
    """A query exceeds what a precomputed table can answer."""


class ResourceLimitError(FactprimesError, RuntimeError):
    """A request would exceed a configured memory or runtime cap."""


class QuadratureError(FactprimesError, ArithmeticError):
    """Adaptive integration failed to converge within the depth limit.

    The best available estimate is attached so callers can decide whether
    to accept it anyway.
    """

    def __init__(self, message: str, best_value: float, err_estimate: float):
        super().__init__(message)
        self.best_value = best_value
        self.err_estimate = err_estimate
