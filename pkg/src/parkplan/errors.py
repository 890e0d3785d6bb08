"""Exception types shared across the package."""


class ParkplanError(Exception):
    """Base class for every error this package raises on purpose."""


class DimensionError(ParkplanError, ValueError):
    """A matrix or coordinate array has the wrong shape for the operation."""


class DomainError(ParkplanError, ValueError):
    """A numeric argument is outside its legal domain (negative, NaN, inf, ...)."""


class SizeGuardError(ParkplanError, ValueError):
    """Input exceeds a hard size limit that keeps a routine tractable."""


class CapacityError(ParkplanError):
    """Fewer available parking spaces than the operation needs."""


class ConsistencyError(ParkplanError):
    """Cross-check failed: values that must describe the same problem do not."""


class ConfigError(ParkplanError, ValueError):
    """A scenario or benchmark configuration is invalid."""


class FileFormatError(ParkplanError, ValueError):
    """A matrix, scenario, or results file could not be parsed."""


class InvariantViolation(ParkplanError):
    """Something the solver guarantees was observed to be false; report a bug."""
