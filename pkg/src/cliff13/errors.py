class Cliff13Error(Exception):
    """Base class for all errors raised by this package."""


class InvalidGradeError(Cliff13Error, ValueError):
    pass


class ConvergenceError(Cliff13Error, ArithmeticError):
    pass


class DomainError(Cliff13Error, ValueError):
    """An argument lies outside the set an operation is defined on.

    ``residual`` carries the measured violation when there is one.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class OutsideDomainError(DomainError):
    """The exterior exponent was asked for a generator with lambda <= 0."""

    def __init__(self, lam):
        super().__init__(f"exterior exponent needs lambda > 0, got {lam!r}", residual=lam)
        self.lam = lam


class RepresentationError(Cliff13Error):
    pass


class DegeneracyError(Cliff13Error, ValueError):
    def __init__(self, message, det=None, point=None):
        super().__init__(message)
        self.det = det
        self.point = point


class NonClosureError(Cliff13Error):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class InvalidGeneratorError(DomainError):
    """A generator has support outside the grade the operation accepts."""
