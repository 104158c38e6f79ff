"""Exception types shared across the package.

Everything derives from ValueError so callers that do not care about the
distinction can catch one base class.  The CLI maps each class to its own
exit code.
"""


class QzsError(ValueError):
    """Base class for all package-specific errors."""


class InvalidDimensionError(QzsError):
    """Raised when a Hilbert-space dimension is not an integer >= 2."""


class InfeasibleParameterError(QzsError):
    """Raised when a strategy parameter lies outside the feasible interval.

    Attributes
    ----------
    p_min : float
        Lower end of the feasible interval for the offending dimension.
    """

    def __init__(self, message, p_min=None):
        super().__init__(message)
        self.p_min = p_min


class ShapeMismatchError(QzsError):
    """Raised when operator, state, and payoff shapes do not line up."""


class InvalidStateError(QzsError):
    """Raised for shared-state coefficient vectors that are negative,
    non-finite, or not normalized.  Nothing is renormalized silently."""


class DomainError(QzsError):
    """Raised when a query point lies outside the evaluation rectangle."""


class ConfigError(QzsError):
    """Base class for configuration problems."""


class ConfigParseError(ConfigError):
    """Raised when a config file is not syntactically valid JSON."""


class ConfigValidationError(ConfigError):
    """Raised when a config parses but violates the schema, with the field named."""
