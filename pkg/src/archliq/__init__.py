"""ARCH with a stationary liquidity factor: simulation and moment estimation.

The package simulates X_t = sigma_t eps_t with
sigma_t^2 = alpha0 + alpha1 X_{t-1}^2 + l1 L_{t-1} under several liquidity
processes L, recovers (alpha0, alpha1, l1) from observed X^2 through
closed-form quadratic moment equations, and ships a reproducible Monte Carlo
harness around both.
"""

from .acf import AcfEstimates, estimate_acf
from .errors import (
    ArchLiqError,
    ConfigError,
    CovarianceError,
    GenerationError,
    RegimeError,
    SimulationError,
    UnidentifiableError,
)
from .estimators import (
    EstimationResult,
    EstimatorInputs,
    QuadCoeffs,
    estimate_def1,
    estimate_def2,
    quad_coeffs_def1,
    quad_coeffs_def2,
    select_root,
)
from .fgn import (
    FgnConfig,
    cholesky_implied_covariance,
    circulant_implied_covariance,
    fgn_autocovariance,
    sample_fgn,
    toeplitz_covariance,
)
from .kernels import backend
from .liquidity import (
    CompensatedPoissonSquared,
    FgnSquared,
    LiquidityCovariance,
    LiquidityModel,
    WhiteSquared,
    gaussian_triple_moment,
    parse_liquidity,
    sample_liquidity,
    theoretical_covariance,
)
from .model import (
    ModelParams,
    NoiseMoments,
    RegimeReport,
    theoretical_mean_x_squared,
    theoretical_sigma2_liquidity_cross_moment,
    theoretical_sigma4,
    theoretical_x_fourth,
    theoretical_x_squared_acov,
    validate_regime,
)
from .montecarlo import (
    ExperimentConfig,
    ReplicationRecord,
    SummaryRow,
    emit_histogram,
    load_config,
    run_experiment,
    run_replication,
    summarize,
)
from .noise import sample_compensated_poisson_increments, sample_gaussian_iid
from .seeding import SeedSpec
from .simulate import (
    SamplePath,
    auto_truncation,
    simulate_recursive,
    simulate_stationary_series,
)

__version__ = "0.1.0"

__all__ = [
    "AcfEstimates",
    "ArchLiqError",
    "CompensatedPoissonSquared",
    "ConfigError",
    "CovarianceError",
    "EstimationResult",
    "EstimatorInputs",
    "ExperimentConfig",
    "FgnConfig",
    "FgnSquared",
    "GenerationError",
    "LiquidityCovariance",
    "LiquidityModel",
    "ModelParams",
    "NoiseMoments",
    "QuadCoeffs",
    "RegimeError",
    "RegimeReport",
    "ReplicationRecord",
    "SamplePath",
    "SeedSpec",
    "SimulationError",
    "SummaryRow",
    "UnidentifiableError",
    "WhiteSquared",
    "auto_truncation",
    "backend",
    "cholesky_implied_covariance",
    "circulant_implied_covariance",
    "emit_histogram",
    "estimate_acf",
    "estimate_def1",
    "estimate_def2",
    "fgn_autocovariance",
    "gaussian_triple_moment",
    "load_config",
    "parse_liquidity",
    "quad_coeffs_def1",
    "quad_coeffs_def2",
    "run_experiment",
    "run_replication",
    "sample_compensated_poisson_increments",
    "sample_fgn",
    "sample_gaussian_iid",
    "sample_liquidity",
    "select_root",
    "simulate_recursive",
    "simulate_stationary_series",
    "summarize",
    "theoretical_covariance",
    "theoretical_mean_x_squared",
    "theoretical_sigma2_liquidity_cross_moment",
    "theoretical_sigma4",
    "theoretical_x_fourth",
    "theoretical_x_squared_acov",
    "toeplitz_covariance",
    "validate_regime",
]
