"""Exception types raised across the package."""


class NLMagicError(Exception):
    """Base class for all package errors."""


class InputError(NLMagicError, ValueError):
    """Malformed arguments: bad indices, mismatched shapes, excluded parameters."""


class ContractError(NLMagicError, ValueError):
    """An input violates a physical precondition, e.g. a covariance matrix that is not pure."""


class ResourceError(NLMagicError, RuntimeError):
    """The requested computation exceeds a configured size cap."""


class DegeneracyError(NLMagicError, RuntimeError):
    """A quadratic Hamiltonian has an exact zero mode, so its ground state is not unique."""

    def __init__(self, message, eps_min=None):
        super().__init__(message)
        self.eps_min = eps_min


class NumericError(NLMagicError, ArithmeticError):
    """A numerical routine failed to converge."""
