"""Closed-form parameter recovery from the autocovariances of X^2.

Both estimator families eliminate l1^2 between two moment equations of the
squared process and land on a quadratic in alpha1.

Single-lag family (lag n != 0, using the lag-0 equation):

    a = gamma(n) - (s(n)/s(0)) gamma(0)
    b = 2 (s(n)/s(0)) gamma(1) - (gamma(n+1) + gamma(n-1))
    c = gamma(n) + (s(n)/s(0)) (mu2 Var(eps^2)/E(eps^4) - gamma(0))

Two-lag family (n1 != n2, both nonzero, s(n2) != 0):

    a = gamma(n1) - (s(n1)/s(n2)) gamma(n2)
    b = (s(n1)/s(n2)) (gamma(n2+1) + gamma(n2-1)) - (gamma(n1+1) + gamma(n1-1))
    c = a

alpha1 is a root of a x^2 + b x + c; l1 follows from the eliminated equation
(a square root, so a negative radicand means no real estimate) and alpha0
from mu (1 - alpha1) - l1.  The +/- ambiguity is settled by an admissible
band and a residual test on auxiliary lags; see :func:`select_root`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from .acf import AcfEstimates
from .errors import CovarianceError, UnidentifiableError
from .liquidity import LiquidityCovariance
from .model import NoiseMoments

STATUS_REAL = "real"
STATUS_COMPLEX = "complex_discarded"
STATUS_DEGENERATE = "degenerate_linear"

REASON_DISCRIMINANT = "negative_discriminant"
REASON_RADICAND = "negative_radicand"
REASON_NO_ROOT = "no_admissible_root"

#: alpha1 candidates outside this band are rejected before the residual test.
ADMISSIBLE_BAND = (-0.05, 1.05)

#: number of auxiliary lags used by the residual test.
AUX_LAGS = 5

_DEGENERATE_REL = 1e-12


@dataclass(frozen=True)
class EstimatorInputs:
    """Everything an estimator consumes: sample ACF, liquidity covariance, noise moments."""

    acf: AcfEstimates
    liquidity_cov: LiquidityCovariance
    noise: NoiseMoments


@dataclass(frozen=True)
class QuadCoeffs:
    """Coefficients of the alpha1 quadratic; discriminant = b^2 - 4ac."""

    a: float
    b: float
    c: float

    @property
    def discriminant(self) -> float:
        return self.b * self.b - 4.0 * self.a * self.c


@dataclass(frozen=True)
class EstimationResult:
    """Outcome of one estimation.

    status "real": all three estimates present.  "degenerate_linear": the
    quadratic collapsed to a linear equation but the estimates are real.
    "complex_discarded": no real estimate; ``reason`` says why and, when only
    the l1 radicand failed, ``alpha1_real`` still carries the real alpha1
    root for diagnostics.
    """

    status: str
    alpha0_hat: float | None = None
    alpha1_hat: float | None = None
    l1_hat: float | None = None
    chosen_root: str | None = None
    discriminant: float | None = None
    reason: str | None = None
    alpha1_real: float | None = None
    residuals: Mapping[int, float] = field(default_factory=dict)


def quad_coeffs_def1(inputs: EstimatorInputs, lag: int = 1) -> QuadCoeffs:
    """Quadratic coefficients of the single-lag family."""
    if lag == 0:
        raise ValueError("lag must be nonzero")
    cov = inputs.liquidity_cov
    if cov.s(0) <= 0:
        raise CovarianceError("liquidity variance s(0) must be positive")
    g = inputs.acf.gamma
    weight = cov.s(lag) / cov.s(0)
    mu2_term = inputs.acf.mu2_hat * inputs.noise.var_eps_sq / inputs.noise.e4
    return QuadCoeffs(
        a=g(lag) - weight * g(0),
        b=2.0 * weight * g(1) - (g(lag + 1) + g(lag - 1)),
        c=g(lag) + weight * (mu2_term - g(0)),
    )


def quad_coeffs_def2(inputs: EstimatorInputs, n1: int, n2: int) -> QuadCoeffs:
    """Quadratic coefficients of the two-lag family (constant term equals ``a``)."""
    if n1 == 0 or n2 == 0 or n1 == n2:
        raise ValueError("need two distinct nonzero lags")
    cov = inputs.liquidity_cov
    if cov.s(n2) == 0:
        raise CovarianceError(
            f"s({n2}) = 0: liquidity is uncorrelated at that lag; "
            "use the single-lag estimator instead"
        )
    g = inputs.acf.gamma
    weight = cov.s(n1) / cov.s(n2)
    a = g(n1) - weight * g(n2)
    return QuadCoeffs(
        a=a,
        b=weight * (g(n2 + 1) + g(n2 - 1)) - (g(n1 + 1) + g(n1 - 1)),
        c=a,
    )


def _quadratic_roots(a: float, b: float, c: float, disc: float):
    """Both roots with their +/- labels, via the cancellation-free form."""
    sq = math.sqrt(disc)
    if b >= 0:
        q = -0.5 * (b + sq)
        first_label = "minus"  # q/a = (-b - sqrt)/(2a)
    else:
        q = -0.5 * (b - sq)
        first_label = "plus"
    if q == 0.0:  # b == 0 and disc == 0: double root at zero
        return (("plus", 0.0), ("minus", 0.0))
    other_label = "plus" if first_label == "minus" else "minus"
    return ((first_label, q / a), (other_label, c / q))


def select_root(
    candidates: Sequence[tuple[str, float]],
    l2_of: Callable[[float], float],
    residual_at: Callable[[int, float, float], float],
    aux_lags: Sequence[int],
    band: tuple[float, float] = ADMISSIBLE_BAND,
):
    """Pick the alpha1 root.

    Candidates outside ``band`` are dropped first.  Among the survivors the
    residual of the lag-n moment equation, with each root's own implied l1^2,
    is summed (squared) over the auxiliary lags and the smaller total wins.
    Residual ties fall back to the root inside (0, 1), then to the smaller
    root.  Returns (label, value, residuals-of-chosen) or None when every
    candidate is rejected.
    """
    admissible = [(label, v) for label, v in candidates if band[0] <= v <= band[1]]
    if not admissible:
        return None

    def residuals_for(value: float) -> dict[int, float]:
        l2 = l2_of(value)
        return {m: residual_at(m, value, l2) for m in aux_lags}

    if len(admissible) == 1:
        label, value = admissible[0]
        return label, value, residuals_for(value)

    scored = []
    for label, value in admissible:
        res = residuals_for(value)
        scored.append((math.fsum(r * r for r in res.values()), label, value, res))
    scored.sort(key=lambda item: item[0])
    best, runner = scored[0], scored[1]
    tied = not aux_lags or math.isclose(best[0], runner[0], rel_tol=1e-9, abs_tol=0.0)
    if tied:
        inside = [item for item in scored if 0.0 < item[2] < 1.0]
        pool = inside or scored
        best = min(pool, key=lambda item: item[2])
    return best[1], best[2], best[3]


def _estimate(
    inputs: EstimatorInputs,
    coeffs: QuadCoeffs,
    l2_of: Callable[[float], float],
    aux_base: int,
) -> EstimationResult:
    """Shared tail of both estimator families: roots, selection, l1, alpha0."""
    g = inputs.acf.gamma
    cov = inputs.liquidity_cov

    def residual_at(m: int, alpha: float, l2: float) -> float:
        return alpha * alpha * g(m) - alpha * (g(m + 1) + g(m - 1)) + g(m) - l2 * cov.s(m)

    max_lag = inputs.acf.max_lag
    aux_lags = [
        m for m in range(aux_base + 1, aux_base + 1 + AUX_LAGS) if m + 1 <= max_lag
    ]

    a, b, c = coeffs.a, coeffs.b, coeffs.c
    disc = coeffs.discriminant
    if abs(a) < _DEGENERATE_REL * max(1.0, abs(b), abs(c)):
        if abs(b) < _DEGENERATE_REL * max(1.0, abs(c)):
            raise UnidentifiableError(
                "both the quadratic and linear coefficients vanish; "
                "alpha1 is not identifiable from these inputs"
            )
        chosen = ("linear", -c / b)
        status = STATUS_DEGENERATE
        residuals = {m: residual_at(m, chosen[1], l2_of(chosen[1])) for m in aux_lags}
    else:
        if disc < 0:
            return EstimationResult(
                status=STATUS_COMPLEX, discriminant=disc, reason=REASON_DISCRIMINANT
            )
        selection = select_root(
            _quadratic_roots(a, b, c, disc), l2_of, residual_at, aux_lags
        )
        if selection is None:
            return EstimationResult(
                status=STATUS_COMPLEX, discriminant=disc, reason=REASON_NO_ROOT
            )
        label, value, residuals = selection
        chosen = (label, value)
        status = STATUS_REAL

    label, alpha1 = chosen
    l2 = l2_of(alpha1)
    if l2 < 0:
        return EstimationResult(
            status=STATUS_COMPLEX,
            discriminant=disc,
            reason=REASON_RADICAND,
            alpha1_real=alpha1,
            chosen_root=label,
            residuals=residuals,
        )
    l1 = math.sqrt(l2)
    alpha0 = inputs.acf.mu_hat * (1.0 - alpha1) - l1
    return EstimationResult(
        status=status,
        alpha0_hat=alpha0,
        alpha1_hat=alpha1,
        l1_hat=l1,
        chosen_root=label,
        discriminant=disc,
        alpha1_real=alpha1,
        residuals=residuals,
    )


def estimate_def1(inputs: EstimatorInputs, lag: int = 1) -> EstimationResult:
    """Single-lag estimator (the default, with lag 1)."""
    coeffs = quad_coeffs_def1(inputs, lag)
    g = inputs.acf.gamma
    cov = inputs.liquidity_cov
    mu2_term = inputs.acf.mu2_hat * inputs.noise.var_eps_sq / inputs.noise.e4

    def l2_of(alpha: float) -> float:
        return (alpha * alpha * g(0) - 2.0 * alpha * g(1) + g(0) - mu2_term) / cov.s(0)

    return _estimate(inputs, coeffs, l2_of, abs(lag))


def estimate_def2(inputs: EstimatorInputs, n1: int = 1, n2: int = 2) -> EstimationResult:
    """Two-lag estimator, for liquidities correlated at lag n2.

    Exposed for disambiguation experiments; the single-lag estimator is the
    default.
    """
    coeffs = quad_coeffs_def2(inputs, n1, n2)
    g = inputs.acf.gamma
    s_n2 = inputs.liquidity_cov.s(n2)

    def l2_of(alpha: float) -> float:
        return (
            alpha * alpha * g(n2) - alpha * (g(n2 + 1) + g(n2 - 1)) + g(n2)
        ) / s_n2

    return _estimate(inputs, coeffs, l2_of, max(abs(n1), abs(n2)))
