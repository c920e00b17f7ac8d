"""Exception types shared across the package."""


class DomainError(ValueError):
    """Argument outside the domain where a function is defined."""


class ConvergenceError(ArithmeticError):
    """An iterative evaluation stopped before reaching its tolerance.

    The best estimate found so far is kept on ``estimate`` together with the
    relative accuracy that was achieved.
    """

    def __init__(self, message, estimate=float("nan"), achieved=float("nan")):
        super().__init__(message)
        self.estimate = estimate
        self.achieved = achieved


class QuadratureError(ConvergenceError):
    """Adaptive quadrature did not converge; ``estimate`` holds the partial value."""


class SchemeUnsupported(ValueError):
    """The processing scheme cannot run with the given antenna count."""


class DegenerateParams(ValueError):
    """Closed forms are singular at equal source and interference SNR."""


class BracketFailure(RuntimeError):
    """No sign change of the first-order condition was found on (0, 1)."""
