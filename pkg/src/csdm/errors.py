"""Exception types raised across the package."""


class CsdmError(Exception):
    """Base class for all package errors."""


class DimensionError(CsdmError, ValueError):
    """Operands have incompatible shapes or qubit counts."""


class DomainError(CsdmError, ValueError):
    """An input lies outside the domain where a closed form is valid."""


class DegeneracyError(CsdmError, ValueError):
    """A basis became numerically linearly dependent."""


class ConvergenceError(CsdmError, RuntimeError):
    """An iterative method did not converge within its iteration budget."""


class NotFoundError(CsdmError, LookupError):
    """No eigenvalue lies within tolerance of the requested target."""


class PreconditionError(CsdmError, ValueError):
    """An operator does not satisfy a structural precondition."""


class InconsistentProbabilitiesError(CsdmError, ValueError):
    """Measured probabilities cannot come from any complex eigenvalue."""


class ZeroMagnitudeError(CsdmError, ValueError):
    """The ancilla-zero probability is zero, so no eigenvalue can be recovered."""


class ParseError(CsdmError, ValueError):
    """Malformed Hamiltonian text. Carries the 1-based line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
