class HydroShiftError(Exception):
    """Base class for every error raised by hydroshift."""


class InvalidQuantumNumbersError(HydroShiftError, ValueError):
    """Quantum numbers violate a coupling or range constraint."""


class InvalidPotentialError(HydroShiftError, ValueError):
    """A perturbation was given a non-finite or out-of-range parameter."""


class QuadratureConvergenceError(HydroShiftError, ArithmeticError):
    """Doubling the quadrature nodes moved a result by more than the tolerance."""

    def __init__(self, what: str, coarse: complex, fine: complex, tol: float):
        self.what = what
        self.coarse = coarse
        self.fine = fine
        self.tol = tol
        super().__init__(
            f"{what} did not converge: {coarse!r} -> {fine!r} on node doubling (tol={tol:g})"
        )


class ConfigurationError(HydroShiftError, ValueError):
    """Invalid run configuration or config file."""


class RegimeError(HydroShiftError, ValueError):
    """Non-physical gas conditions passed to the regime estimator."""
