"""Liquidity processes: samplers plus their exact second-order structure.

A liquidity process is a strictly stationary positive sequence with unit
mean.  Each supported kind is the squared increment of a simpler driving
process, and each exposes both a path sampler and its theoretical
autocovariance s(n) (with f(n) = s(|n|) + 1), which the estimators consume.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .errors import ConfigError
from .fgn import FgnConfig, fgn_autocovariance, sample_fgn
from .noise import sample_compensated_poisson_increments, sample_gaussian_iid
from .seeding import SeedSpec


@dataclass(frozen=True)
class FgnSquared:
    """Squared increments of fractional Brownian motion with index ``hurst``."""

    hurst: float

    def __post_init__(self) -> None:
        if not 0.0 < self.hurst < 1.0:
            raise ValueError(f"hurst must lie strictly inside (0, 1), got {self.hurst}")


@dataclass(frozen=True)
class CompensatedPoissonSquared:
    """Squared compensated Poisson increments, rescaled by 1/lam so E L = 1.

    At lam = 1 the rescaling is the identity.
    """

    lam: float = 1.0

    def __post_init__(self) -> None:
        if self.lam <= 0:
            raise ValueError(f"lam must be positive, got {self.lam}")


@dataclass(frozen=True)
class WhiteSquared:
    """Squared i.i.d. standard normals: the uncorrelated baseline, s(n) = 0 off zero."""


LiquidityModel = Union[FgnSquared, CompensatedPoissonSquared, WhiteSquared]


@dataclass(frozen=True)
class LiquidityCovariance:
    """Autocovariance s of a liquidity process.

    ``s0`` is the variance of L_0; ``s(n)`` is symmetric in the lag sign and
    bounded by s0 in absolute value; f(n) = s(|n|) + 1 = E(L_0 L_n).
    """

    s0: float
    _kernel: Callable[[int], float]

    def s(self, lag: int) -> float:
        lag = abs(int(lag))
        if lag == 0:
            return self.s0
        return self._kernel(lag)

    def f(self, lag: int) -> float:
        return self.s(lag) + 1.0


def sample_liquidity(model: LiquidityModel, seed: SeedSpec, n: int) -> np.ndarray:
    """Sample ``n`` consecutive liquidity values; all entries are nonnegative."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if isinstance(model, FgnSquared):
        increments = sample_fgn(seed, FgnConfig(model.hurst, n))
        return increments**2
    if isinstance(model, CompensatedPoissonSquared):
        increments = sample_compensated_poisson_increments(seed, model.lam, n)
        return increments**2 / model.lam
    if isinstance(model, WhiteSquared):
        return sample_gaussian_iid(seed, n) ** 2
    raise TypeError(f"unknown liquidity model {model!r}")


def theoretical_covariance(model: LiquidityModel) -> LiquidityCovariance:
    """Exact autocovariance of the liquidity process.

    FgnSquared: s(n) = 2 r(n)^2 with r the fGn autocovariance, s(0) = 2 (a
    squared standard normal has variance 2).  CompensatedPoissonSquared:
    uncorrelated off lag zero; with the 1/lam rescaling the variance is
    (lam + 3 lam^2)/lam^2 - 1, i.e. 3 at lam = 1.  WhiteSquared: s(0) = 2,
    s(n) = 0 otherwise.
    """
    if isinstance(model, FgnSquared):
        hurst = model.hurst

        def kernel(lag: int) -> float:
            return 2.0 * float(fgn_autocovariance(hurst, lag)) ** 2

        return LiquidityCovariance(2.0, kernel)
    if isinstance(model, CompensatedPoissonSquared):
        lam = model.lam
        s0 = (lam + 3.0 * lam * lam) / (lam * lam) - 1.0
        return LiquidityCovariance(s0, lambda lag: 0.0)
    if isinstance(model, WhiteSquared):
        return LiquidityCovariance(2.0, lambda lag: 0.0)
    raise TypeError(f"unknown liquidity model {model!r}")


def gaussian_triple_moment(rho12: float, rho13: float, rho23: float) -> float:
    """E(X1^2 X2^2 X3^2) for centered unit-variance jointly Gaussian X1, X2, X3.

    By Isserlis' theorem,

        E(X1^2 X2^2 X3^2) = 1 + 2 (rho12^2 + rho13^2 + rho23^2)
                              + 8 rho12 rho13 rho23.

    Inputs must be the correlations of a positive semidefinite matrix; this is
    not checked.
    """
    return (
        1.0
        + 2.0 * (rho12 * rho12 + rho13 * rho13 + rho23 * rho23)
        + 8.0 * rho12 * rho13 * rho23
    )


def parse_liquidity(spec: str) -> LiquidityModel:
    """Parse a CLI/config liquidity spec.

    Accepted forms: ``fgn:H=0.333``, ``poisson:lambda=1``, ``poisson``,
    ``white``.
    """
    text = spec.strip().lower()
    if text == "white":
        return WhiteSquared()
    kind, _, arg = text.partition(":")
    if kind == "fgn":
        key, _, value = arg.partition("=")
        if key.strip() not in ("h", "hurst") or not value:
            raise ConfigError(f"fgn liquidity needs H=<value>, got {spec!r}")
        return FgnSquared(float(value))
    if kind == "poisson":
        if not arg:
            return CompensatedPoissonSquared(1.0)
        key, _, value = arg.partition("=")
        if key.strip() not in ("lambda", "lam") or not value:
            raise ConfigError(f"poisson liquidity needs lambda=<value>, got {spec!r}")
        return CompensatedPoissonSquared(float(value))
    raise ConfigError(f"unknown liquidity spec {spec!r}")


def format_liquidity(model: LiquidityModel) -> str:
    """Inverse of :func:`parse_liquidity` (canonical form)."""
    if isinstance(model, FgnSquared):
        return f"fgn:H={model.hurst:.17g}"
    if isinstance(model, CompensatedPoissonSquared):
        return f"poisson:lambda={model.lam:.17g}"
    if isinstance(model, WhiteSquared):
        return "white"
    raise TypeError(f"unknown liquidity model {model!r}")
