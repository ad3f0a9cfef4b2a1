"""Exception types shared across the package."""


class ArchLiqError(Exception):
    """Base class for all archliq errors."""


class GenerationError(ArchLiqError):
    """Raised when a noise generator cannot produce a valid sample."""


class SimulationError(ArchLiqError):
    """Raised when a simulated path becomes nonfinite or overflows."""


class RegimeError(ArchLiqError):
    """Raised when parameters violate the moment bound required by an operation."""


class CovarianceError(ArchLiqError):
    """Raised when a liquidity covariance does not meet an estimator's preconditions."""


class UnidentifiableError(ArchLiqError):
    """Raised when both quadratic coefficients vanish and no root can be solved for."""


class ConfigError(ArchLiqError):
    """Raised for invalid experiment configuration values or files."""
