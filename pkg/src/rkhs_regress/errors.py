"""Exception and warning types shared across the package."""


class DomainError(ValueError):
    """An evaluation point lies outside the interval [-1, 1]."""


class InsufficientQuadratureError(ValueError):
    """The quadrature rule has too few nodes for the requested operation."""


class EmptySampleError(ValueError):
    """An estimator was asked to fit an empty sample."""


class FactorizationError(RuntimeError):
    """The regularized Gram matrix could not be factorized.

    Signals a regularization parameter too small relative to machine
    precision and the sample size.
    """


class ConvergenceError(RuntimeError):
    """An iterative numerical procedure failed to converge."""


class CsvFormatError(ValueError):
    """A samples CSV file is malformed; the message names the offending row."""


class QuadratureResolutionWarning(UserWarning):
    """The quadrature rule may under-resolve an oscillatory integrand."""
