"""Exception types shared across the package."""


class InputError(ValueError):
    """An argument violates an operation's preconditions."""


class DimensionError(InputError):
    """Array shapes do not line up."""


class NumericError(ArithmeticError):
    """A computation failed numerically (non-convergence, non-finite values)."""


class CannotScaleError(NumericError):
    """A matrix cannot be rescaled to a target spectral radius (radius ~ 0)."""


class UndefinedMetricError(InputError):
    """A metric is undefined for the given data (e.g. zero-variance target)."""


class ConfigError(InputError):
    """Invalid or unknown run configuration (CLI / JSON config)."""
