"""Fractional Gaussian noise: exact synthesis and its covariance surfaces.

The target process is the unit-spaced increment sequence of fractional
Brownian motion with Hurst index H in (0, 1): a stationary Gaussian sequence
with mean 0, variance 1 and autocovariance

    r(k) = 0.5 * ((k+1)^{2H} + |k-1|^{2H} - 2 k^{2H}),   k >= 0,

which decays like k^{2H-2}.  The primary sampler embeds the Toeplitz
covariance in a circulant of size 2^ceil(log2(2(n-1))) and draws through an
FFT, which is exact in distribution whenever the circulant eigenvalues are
nonnegative.  Eigenvalues in [-1e-9, 0) are treated as roundoff and clamped;
anything below that triggers a Cholesky factorization of the Toeplitz matrix
instead (exact as well, feasible only at small sizes).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import GenerationError
from .seeding import SeedSpec

# Most negative circulant eigenvalue still attributed to roundoff.
EIGENVALUE_TOLERANCE = -1e-9

# Cholesky of an n x n Toeplitz matrix is O(n^3); beyond this it is not a
# usable fallback.
CHOLESKY_MAX_LENGTH = 8192


@dataclass(frozen=True)
class FgnConfig:
    """Length and Hurst index of one fractional Gaussian noise sample."""

    hurst: float
    length: int

    def __post_init__(self) -> None:
        if not 0.0 < self.hurst < 1.0:
            raise ValueError(f"hurst must lie strictly inside (0, 1), got {self.hurst}")
        if self.length < 1:
            raise ValueError(f"length must be >= 1, got {self.length}")


def fgn_autocovariance(hurst: float, lags) -> np.ndarray:
    """Autocovariance r(k) of fractional Gaussian noise at integer lags."""
    k = np.abs(np.asarray(lags, dtype=np.float64))
    h2 = 2.0 * hurst
    return 0.5 * ((k + 1.0) ** h2 + np.abs(k - 1.0) ** h2 - 2.0 * k**h2)


def embedding_size(length: int) -> int:
    """Circulant size used for a sample of ``length``: 2^ceil(log2(2(length-1)))."""
    if length < 2:
        return 2
    return 1 << (2 * (length - 1) - 1).bit_length()


@lru_cache(maxsize=64)
def _circulant_eigenvalues(hurst: float, size: int) -> np.ndarray:
    """Eigenvalues of the circulant embedding (unclamped), cached per (H, size)."""
    half = size // 2
    r = fgn_autocovariance(hurst, np.arange(half + 1))
    c = np.concatenate([r, r[half - 1:0:-1]])
    lam = np.fft.fft(c).real
    lam.flags.writeable = False
    return lam


def toeplitz_covariance(hurst: float, length: int) -> np.ndarray:
    """The exact covariance matrix of ``length`` consecutive increments."""
    r = fgn_autocovariance(hurst, np.arange(length))
    idx = np.abs(np.subtract.outer(np.arange(length), np.arange(length)))
    return r[idx]


@lru_cache(maxsize=16)
def _toeplitz_cholesky(hurst: float, length: int) -> np.ndarray:
    factor = np.linalg.cholesky(toeplitz_covariance(hurst, length))
    factor.flags.writeable = False
    return factor


def circulant_implied_covariance(hurst: float, length: int) -> np.ndarray:
    """Covariance actually realized by the circulant sampler (post-clamping).

    Equals the Toeplitz matrix of r exactly (up to FFT roundoff) whenever the
    embedding is nonnegative definite.
    """
    size = embedding_size(length)
    lam = np.clip(_circulant_eigenvalues(hurst, size), 0.0, None)
    circular = np.fft.ifft(lam).real
    idx = np.abs(np.subtract.outer(np.arange(length), np.arange(length)))
    return circular[idx]


def cholesky_implied_covariance(hurst: float, length: int) -> np.ndarray:
    """Covariance realized by the Cholesky sampler: L L^T of the factorization."""
    factor = _toeplitz_cholesky(hurst, length)
    return factor @ factor.T


def _sample_circulant(gen: np.random.Generator, hurst: float, length: int) -> np.ndarray:
    size = embedding_size(length)
    lam = _circulant_eigenvalues(hurst, size)
    if lam.min() < EIGENVALUE_TOLERANCE:
        raise GenerationError(
            f"circulant embedding of size {size} for H={hurst} has eigenvalue "
            f"{lam.min():.3e} below tolerance {EIGENVALUE_TOLERANCE:g}"
        )
    lam = np.clip(lam, 0.0, None)
    half = size // 2
    draws = gen.standard_normal(size)
    spectrum = np.empty(size, dtype=np.complex128)
    spectrum[0] = np.sqrt(lam[0] / size) * draws[0]
    spectrum[half] = np.sqrt(lam[half] / size) * draws[1]
    k = np.arange(1, half)
    amplitude = np.sqrt(lam[1:half] / (2.0 * size))
    spectrum[k] = amplitude * (draws[2 * k] + 1j * draws[2 * k + 1])
    spectrum[size - k] = np.conj(spectrum[k])
    return np.fft.fft(spectrum).real[:length]


def _sample_cholesky(gen: np.random.Generator, hurst: float, length: int) -> np.ndarray:
    if length > CHOLESKY_MAX_LENGTH:
        raise GenerationError(
            f"Cholesky fallback infeasible at length {length} "
            f"(limit {CHOLESKY_MAX_LENGTH})"
        )
    try:
        factor = _toeplitz_cholesky(hurst, length)
    except np.linalg.LinAlgError as exc:
        raise GenerationError(
            f"Cholesky factorization failed for H={hurst}, length {length}: "
            f"covariance not numerically positive definite ({exc})"
        ) from exc
    return factor @ gen.standard_normal(length)


def sample_fgn(seed: SeedSpec, cfg: FgnConfig, method: str = "auto") -> np.ndarray:
    """Draw one fractional Gaussian noise path of ``cfg.length``.

    ``method`` is "auto" (circulant with Cholesky fallback), "circulant" or
    "cholesky".  Fixed seeds reproduce bit-identical paths per method.
    """
    if method not in ("auto", "circulant", "cholesky"):
        raise ValueError(f"unknown method {method!r}")
    gen = seed.generator()
    if cfg.length == 1:
        return gen.standard_normal(1)
    if method == "cholesky":
        return _sample_cholesky(gen, cfg.hurst, cfg.length)
    try:
        return _sample_circulant(gen, cfg.hurst, cfg.length)
    except GenerationError as embed_err:
        if method == "circulant":
            raise
        try:
            return _sample_cholesky(gen, cfg.hurst, cfg.length)
        except GenerationError as chol_err:
            raise GenerationError(
                f"fGn generation failed by both methods: [{embed_err}] and [{chol_err}]"
            ) from chol_err
