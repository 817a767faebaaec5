class WeldkitError(Exception):
    pass


class DomainError(WeldkitError, ValueError):
    """
    A parameter or evaluation point lies outside the domain where an operation is defined.
    """
    pass


class BoundaryError(DomainError):
    pass


class ResolutionError(DomainError):
    pass


class DegenerateMeasureError(DomainError):
    pass


class ConfigurationError(WeldkitError, ValueError):
    pass


class GeometryError(WeldkitError, ValueError):
    pass


class SingularMapError(WeldkitError, ArithmeticError):
    pass


class InjectivityError(SingularMapError):
    pass


class EvaluationError(WeldkitError, ArithmeticError):
    pass


class DivergenceError(WeldkitError, ArithmeticError):
    pass


class TruncationError(WeldkitError, IndexError):
    pass


class AccuracyError(WeldkitError, ArithmeticError):
    """
    Raised when an adaptive quadrature exhausts its refinement budget. The best value and its error estimate are
    kept on the exception so callers can still report them.
    """

    def __init__(self, message, value=None, error=None) -> None:
        super().__init__(message)
        self.value = value
        self.error = error


class ConvergenceError(WeldkitError, ArithmeticError):
    pass


class WeldingSolverError(ConvergenceError):

    def __init__(self, message, residual=None, triple=None) -> None:
        super().__init__(message)
        self.residual = residual
        self.triple = triple
