"""Model parameters, innovation moments, and closed-form moment formulas.

The process under study is

    X_t = sigma_t * eps_t,
    sigma_t^2 = alpha0 + alpha1 * X_{t-1}^2 + l1 * L_{t-1},

with i.i.d. innovations eps (mean 0, variance 1) independent of the
stationary liquidity L (mean 1).  Three nested moment regimes on alpha1
govern what exists and what can be estimated:

    stationary      alpha1 < 1
    fourth moment   alpha1 < E(eps^4)^(-1/2)
    consistency     alpha1 < E(eps^8)^(-1/4)

Besides the regime checks, this module hosts the closed-form stationary
moments used as test oracles: the mean of X^2, the fourth moments, the
autocovariance of X^2, and the sigma^2/liquidity cross moment.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import RegimeError
from .liquidity import LiquidityCovariance

#: Relative tail mass kept when truncating the geometric series below.
SERIES_TOLERANCE = 1e-12


@dataclass(frozen=True)
class ModelParams:
    """The parameter triple (alpha0, alpha1, l1)."""

    alpha0: float
    alpha1: float
    l1: float

    def __post_init__(self) -> None:
        if self.alpha0 < 0:
            raise ValueError(f"alpha0 must be >= 0, got {self.alpha0}")
        if self.alpha1 <= 0:
            raise ValueError(f"alpha1 must be > 0, got {self.alpha1}")
        if self.l1 <= 0:
            raise ValueError(f"l1 must be > 0, got {self.l1}")


@dataclass(frozen=True)
class NoiseMoments:
    """Even moments of the innovation: E eps^4, E eps^6, E eps^8, Var(eps^2).

    The moments of any unit-variance variable satisfy the chain
    1 <= sqrt(e4) <= e6^(1/3) <= e8^(1/4), enforced here up to roundoff.
    """

    e4: float
    e6: float
    e8: float
    var_eps_sq: float

    def __post_init__(self) -> None:
        chain = (1.0, math.sqrt(self.e4), self.e6 ** (1.0 / 3.0), self.e8**0.25)
        for lo, hi in zip(chain, chain[1:]):
            if hi < lo * (1.0 - 1e-12):
                raise ValueError(
                    f"moment chain violated: 1 <= sqrt(e4) <= e6^(1/3) <= e8^(1/4) "
                    f"fails for {self}"
                )
        if self.var_eps_sq < 0:
            raise ValueError("var_eps_sq must be >= 0")

    @classmethod
    def gaussian(cls) -> "NoiseMoments":
        """Standard normal innovations: e4=3, e6=15, e8=105, Var(eps^2)=2."""
        return cls(3.0, 15.0, 105.0, 2.0)

    @property
    def fourth_moment_bound(self) -> float:
        return self.e4**-0.5

    @property
    def consistency_bound(self) -> float:
        return self.e8**-0.25


@dataclass(frozen=True)
class RegimeReport:
    """Which alpha1 moment bounds hold, with the thresholds themselves."""

    stationary: bool
    fourth_moment: bool
    consistency: bool
    fourth_moment_bound: float
    consistency_bound: float


_PURPOSES = ("stationary", "fourth_moment", "consistency")


def validate_regime(
    params: ModelParams, moments: NoiseMoments, purpose: str = "stationary"
) -> RegimeReport:
    """Check alpha1 against the bound required by ``purpose``.

    Returns the full report; raises :class:`RegimeError` when the requested
    bound fails.
    """
    if purpose not in _PURPOSES:
        raise ValueError(f"purpose must be one of {_PURPOSES}, got {purpose!r}")
    report = RegimeReport(
        stationary=params.alpha1 < 1.0,
        fourth_moment=params.alpha1 < moments.fourth_moment_bound,
        consistency=params.alpha1 < moments.consistency_bound,
        fourth_moment_bound=moments.fourth_moment_bound,
        consistency_bound=moments.consistency_bound,
    )
    failed = not getattr(report, purpose)
    if failed:
        bound = {
            "stationary": 1.0,
            "fourth_moment": report.fourth_moment_bound,
            "consistency": report.consistency_bound,
        }[purpose]
        raise RegimeError(
            f"alpha1={params.alpha1} violates the {purpose} bound alpha1 < {bound:.6g}"
        )
    return report


def geometric_depth(ratio: float, rel_tol: float = SERIES_TOLERANCE) -> int:
    """Smallest K with ratio^(K+1) <= rel_tol, for 0 < ratio < 1."""
    if not 0.0 < ratio < 1.0:
        raise ValueError(f"ratio must lie in (0, 1), got {ratio}")
    return max(1, math.ceil(math.log(rel_tol) / math.log(ratio)) - 1)


def theoretical_mean_x_squared(params: ModelParams) -> float:
    """Stationary mean of X^2: (alpha0 + l1) / (1 - alpha1)."""
    if params.alpha1 >= 1.0:
        raise RegimeError(f"alpha1={params.alpha1} must be < 1 for a stationary mean")
    return (params.alpha0 + params.l1) / (1.0 - params.alpha1)


def theoretical_sigma4(
    params: ModelParams, cov: LiquidityCovariance, moments: NoiseMoments
) -> float:
    """Stationary E(sigma^4), finite only in the fourth-moment regime.

    Expanding the stationary series of sigma^2 and taking expectations term
    by term gives, with q = alpha1^2 E(eps^4) and m = alpha0 + l1,

        E(sigma^4) = [m^2 + l1^2 s(0)
                      + 2 sum_{d>=1} alpha1^d (m^2 + l1^2 s(d))] / (1 - q).
    """
    a1 = params.alpha1
    q = a1 * a1 * moments.e4
    if q >= 1.0:
        raise RegimeError(
            f"alpha1={a1} violates the fourth-moment bound "
            f"alpha1 < {moments.fourth_moment_bound:.6g}"
        )
    m = params.alpha0 + params.l1
    l1sq = params.l1 * params.l1
    depth = geometric_depth(a1)
    cross = sum(a1**d * (m * m + l1sq * cov.s(d)) for d in range(1, depth + 1))
    # beyond the cutoff s(d) is negligible; close the geometric part exactly
    cross += m * m * a1 ** (depth + 1) / (1.0 - a1)
    return (m * m + l1sq * cov.s0 + 2.0 * cross) / (1.0 - q)


def theoretical_x_fourth(
    params: ModelParams, cov: LiquidityCovariance, moments: NoiseMoments
) -> float:
    """Stationary E(X^4) = E(eps^4) E(sigma^4)."""
    return moments.e4 * theoretical_sigma4(params, cov, moments)


def theoretical_x_squared_acov(
    params: ModelParams,
    cov: LiquidityCovariance,
    moments: NoiseMoments,
    max_lag: int,
) -> np.ndarray:
    """Exact autocovariance gamma(n) of X^2 at lags 0..max_lag.

    The centered squared process satisfies Y_t = alpha1 Y_{t-1} + Z_t where
    the driving noise Z has autocovariance

        r_Z(0) = E(sigma^4) Var(eps^2) + l1^2 s(0),
        r_Z(n) = l1^2 s(n),  n != 0.

    Inverting the recursion to its moving-average form yields

        gamma(n) = sum_d alpha1^{|d|} r_Z(n + d) / (1 - alpha1^2),

    computed here with a geometric truncation far below the target accuracy.
    This construction is independent of the quadratic-root estimators and is
    the oracle they are tested against.
    """
    if max_lag < 0:
        raise ValueError("max_lag must be >= 0")
    a1 = params.alpha1
    l1sq = params.l1 * params.l1
    rz0 = theoretical_sigma4(params, cov, moments) * moments.var_eps_sq + l1sq * cov.s0

    def r_z(m: int) -> float:
        if m == 0:
            return rz0
        return l1sq * cov.s(m)

    depth = geometric_depth(a1, 1e-16)
    scale = 1.0 - a1 * a1
    gammas = np.empty(max_lag + 1)
    for n in range(max_lag + 1):
        total = sum(a1 ** abs(d) * r_z(n + d) for d in range(-depth, depth + 1))
        gammas[n] = total / scale
    return gammas


def theoretical_sigma2_liquidity_cross_moment(
    params: ModelParams,
    cov: LiquidityCovariance,
    t_minus_s: int,
    truncation: int | None = None,
) -> float:
    """Stationary cross moment E(sigma_t^2 L_s) for offset ``t_minus_s``.

        E(sigma_t^2 L_s) = alpha0/(1-alpha1)
                           + l1 * sum_{i>=0} alpha1^i f(t-s-i-1),

    with f(n) = s(|n|) + 1.  The sum is truncated once the remaining tail,
    bounded by alpha1^(K+1) (1 + s(0)) / (1 - alpha1) * l1, drops below 1e-12.
    """
    a1 = params.alpha1
    if a1 >= 1.0:
        raise RegimeError(f"alpha1={a1} must be < 1")
    if truncation is None:
        bound = params.l1 * (1.0 + cov.s0) / (1.0 - a1)
        truncation = geometric_depth(a1, SERIES_TOLERANCE / max(bound, 1.0))
    if truncation < 1:
        raise ValueError("truncation must be >= 1")
    series = sum(a1**i * cov.f(t_minus_s - i - 1) for i in range(truncation + 1))
    return params.alpha0 / (1.0 - a1) + params.l1 * series
