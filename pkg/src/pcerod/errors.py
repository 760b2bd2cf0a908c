"""Exception and warning types raised across the package."""


class PceRodError(Exception):
    """Base class for every error raised by pcerod."""


class DomainError(PceRodError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class CorrelationRangeError(DomainError):
    """A material correlation was evaluated outside its stated validity range."""


class DegenerateInputError(DomainError):
    """A random input has zero spread and cannot be standardized."""


class CapacityError(PceRodError):
    """A requested basis exceeds the configured size cap."""


class FitError(PceRodError):
    """Regression of chaos coefficients could not be performed."""


class UnderdeterminedError(FitError):
    """Fewer samples than unknown coefficients (m <= P + 1)."""


class ConditioningError(FitError):
    """The design matrix is numerically rank deficient."""

    def __init__(self, message: str, condition: float):
        super().__init__(message)
        self.condition = condition


class UndefinedIndicesError(PceRodError):
    """Total variance is below the floor so Sobol indices are undefined."""


class SimulationError(PceRodError):
    """The forward rod model reached a non-physical state."""

    def __init__(self, message: str, time_s: float | None = None):
        super().__init__(message)
        self.time_s = time_s


class TemplateError(PceRodError):
    """An input template references placeholders that cannot be resolved."""

    def __init__(self, message: str, placeholders: list[str]):
        super().__init__(message)
        self.placeholders = placeholders


class ConfigError(PceRodError, ValueError):
    """A campaign configuration is malformed."""


class StageOrderError(PceRodError):
    """A pipeline stage ran before the artifact it depends on exists."""

    def __init__(self, message: str, missing: str):
        super().__init__(message)
        self.missing = missing


class InterpolationRangeError(PceRodError):
    """A requested time grid extends beyond a run's output series."""


class UndersampledWarning(UserWarning):
    """Fewer than 2(P+1) samples were supplied for a regression fit."""


class RangeClampWarning(UserWarning):
    """A correlation input was clamped into its validity range."""
