"""Sample moments and the autocovariance estimator of the squared process.

The estimator keeps the 1/N divisor at every lag:

    gamma_hat(n) = (1/N) sum_{t=1}^{N-n} (x_t - xbar)(x_{t+n} - xbar),

with xbar the sample mean, so gamma_hat(0) is the biased sample variance.
Means are the exact compensated sum (math.fsum) once N reaches 1e5; lag
products use a two-pass scheme with the precomputed mean.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

_FSUM_THRESHOLD = 100_000


@dataclass(frozen=True)
class AcfEstimates:
    """Sample mean, raw second moment and autocovariances of a squared series."""

    n_obs: int
    mu_hat: float
    mu2_hat: float
    gamma_hat: Mapping[int, float]

    def gamma(self, lag: int) -> float:
        """gamma_hat at ``lag``; symmetric in the lag sign."""
        return self.gamma_hat[abs(int(lag))]

    @property
    def max_lag(self) -> int:
        return max(self.gamma_hat)


def estimate_acf(x_squared, max_lag: int) -> AcfEstimates:
    """Estimate mean, raw fourth moment and autocovariances of X^2 data.

    ``x_squared`` holds the squared observations, so mu2_hat = mean(x^2) is
    the raw fourth-moment estimate of the underlying series.
    """
    x = np.ascontiguousarray(x_squared, dtype=np.float64)
    if x.ndim != 1:
        raise ValueError("x_squared must be one-dimensional")
    if max_lag < 0:
        raise ValueError(f"max_lag must be >= 0, got {max_lag}")
    n = x.size
    if n < max_lag + 2:
        raise ValueError(
            f"need at least max_lag + 2 = {max_lag + 2} observations, got {n}"
        )
    if n >= _FSUM_THRESHOLD:
        mu = math.fsum(x) / n
        mu2 = math.fsum(np.square(x)) / n
    else:
        mu = float(x.sum()) / n
        mu2 = float(np.square(x).sum()) / n
    centered = x - mu
    gammas = {
        lag: float(np.dot(centered[: n - lag], centered[lag:])) / n
        for lag in range(max_lag + 1)
    }
    return AcfEstimates(n_obs=n, mu_hat=mu, mu2_hat=mu2, gamma_hat=gammas)
