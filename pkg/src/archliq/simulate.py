"""Path simulation: forward recursion and the truncated stationary series.

Two routes to the same stationary law.  The recursion applies

    sigma_t^2 = alpha0 + alpha1 X_{t-1}^2 + l1 L_{t-1},    X_t^2 = sigma_t^2 eps_t^2

forward from a pinned initial X_0^2.  The series route evaluates the
stationary solution directly,

    sigma_{t+1}^2 = sum_{i=0}^{K} (prod_{j<i} A_{t-j}) B_{t-i},
    A_t = alpha1 eps_t^2,   B_t = alpha0 + l1 L_t,

truncated at K where the geometric tail alpha1^{K+1} is negligible, so its
output needs no burn-in.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, RegimeError, SimulationError
from .kernels import OVERFLOW_LIMIT, arch_recursion
from .liquidity import LiquidityModel, sample_liquidity
from .model import ModelParams
from .noise import sample_gaussian_iid
from .seeding import SeedSpec

# Substream labels: one replication seed fans out into independent streams
# for the innovations and the liquidity.
EPS_STREAM = 0
LIQ_STREAM = 1

TRUNCATION_MIN = 64
TRUNCATION_MAX = 10**6
TAIL_TOLERANCE = 1e-12


@dataclass(frozen=True)
class SamplePath:
    """One simulated path.

    All arrays share the same time index.  ``liquidity[t]`` is the value L_t
    entering sigma_{t+1}^2, so sigma_squared[t+1] == alpha0 + alpha1 *
    x_squared[t] + l1 * liquidity[t] holds exactly on every path.  ``eps`` is
    stored so x_squared[t] == sigma_squared[t] * eps[t]^2 can be checked
    pointwise; when the recursion pins the initial value, eps[0] is 1 by
    convention.
    """

    x_squared: np.ndarray
    sigma_squared: np.ndarray
    liquidity: np.ndarray
    eps: np.ndarray
    params: ModelParams
    seed: SeedSpec


def _require_stationary(params: ModelParams) -> None:
    if params.alpha1 >= 1.0:
        raise RegimeError(f"alpha1={params.alpha1} must be < 1 to simulate")


def simulate_recursive(
    params: ModelParams,
    liquidity: LiquidityModel,
    seed: SeedSpec,
    n: int,
    init_x_squared: float = 1.7,
    burn_in: int = 0,
) -> SamplePath:
    """Simulate by forward recursion from a pinned initial squared value.

    With burn_in = 0 the first retained point is the initial value itself
    (sigma^2[0] := x^2[0] := init, eps[0] := 1); burn_in > 0 discards that
    many leading points, so every retained point is generated.
    """
    _require_stationary(params)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if burn_in < 0:
        raise ValueError(f"burn_in must be >= 0, got {burn_in}")
    if init_x_squared < 0 or not math.isfinite(init_x_squared):
        raise ValueError(f"init_x_squared must be finite and >= 0, got {init_x_squared}")
    total = n + burn_in
    if total > 1:
        eps = sample_gaussian_iid(seed.child(EPS_STREAM), total - 1)
    else:
        eps = np.empty(0)
    # one extra liquidity value so every retained row carries its L_t
    liq = sample_liquidity(liquidity, seed.child(LIQ_STREAM), total)
    x_sq, sig_sq, bad = arch_recursion(
        eps, liq[: total - 1], params.alpha0, params.alpha1, params.l1, init_x_squared
    )
    if bad >= 0:
        raise SimulationError(
            f"nonfinite path at step {bad}: sigma^2 or x^2 exceeded "
            f"{OVERFLOW_LIMIT:g} (parameters outside a usable regime?)"
        )
    eps_full = np.concatenate([[1.0], eps])
    return SamplePath(
        x_squared=x_sq[burn_in:],
        sigma_squared=sig_sq[burn_in:],
        liquidity=liq[burn_in:],
        eps=eps_full[burn_in:],
        params=params,
        seed=seed,
    )


def auto_truncation(params: ModelParams, clamp: bool = True) -> int:
    """Series depth K with tail alpha1^K * (alpha0+l1)/(1-alpha1) below 1e-12.

    K = ceil(log(1e-12 (1-alpha1)/(alpha0+l1)) / log(alpha1)), clamped to
    [64, 1e6] for the simulator.
    """
    raw = math.ceil(
        math.log(TAIL_TOLERANCE * (1.0 - params.alpha1) / (params.alpha0 + params.l1))
        / math.log(params.alpha1)
    )
    if not clamp:
        return raw
    return min(max(raw, TRUNCATION_MIN), TRUNCATION_MAX)


def simulate_stationary_series(
    params: ModelParams,
    liquidity: LiquidityModel,
    seed: SeedSpec,
    n: int,
    truncation: int | None = None,
) -> SamplePath:
    """Simulate by evaluating the truncated stationary series directly.

    The noise buffers are laid out newest-first internally, so enlarging the
    truncation extends the buffers further into the past without perturbing
    the values at already-covered times; for i.i.d.-type liquidity (and for
    fGn whose embedding size is unchanged) paths at truncation K and K' > K
    agree to the geometric tail alpha1^K.
    """
    _require_stationary(params)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    required = auto_truncation(params, clamp=False)
    if truncation is None:
        truncation = auto_truncation(params)
    elif truncation < required:
        raise ConfigError(
            f"truncation {truncation} too small: tail tolerance {TAIL_TOLERANCE:g} "
            f"needs at least {required} terms at alpha1={params.alpha1}"
        )
    k = truncation
    # eps_rev[j] = eps_{n-1-j} covers times n-1 .. -k; liq_rev[j] = L_{n-1-j}
    # covers times n-1 .. -k-1.  Forward views are indexed by time + offset.
    eps = sample_gaussian_iid(seed.child(EPS_STREAM), n + k)[::-1]
    liq = sample_liquidity(liquidity, seed.child(LIQ_STREAM), n + k + 1)[::-1]
    a = params.alpha1 * eps**2  # a[idx] = A_t at t = idx - k
    b = params.alpha0 + params.l1 * liq  # b[idx] = B_t at t = idx - k - 1
    sig_sq = b[k : k + n].copy()  # i = 0 term: B_{t-1}
    prod = np.ones(n)
    for i in range(1, k + 1):
        prod *= a[k - i : k - i + n]
        sig_sq += prod * b[k - i : k - i + n]
    eps_out = np.ascontiguousarray(eps[k : k + n])
    x_sq = sig_sq * eps_out**2
    if not np.all(np.isfinite(sig_sq)):
        first_bad = int(np.flatnonzero(~np.isfinite(sig_sq))[0])
        raise SimulationError(f"nonfinite series value at index {first_bad}")
    return SamplePath(
        x_squared=x_sq,
        sigma_squared=sig_sq,
        liquidity=np.ascontiguousarray(liq[k + 1 : k + 1 + n]),
        eps=eps_out,
        params=params,
        seed=seed,
    )
