"""Raw innovation and increment generators.

Every sampler here is a pure function of its :class:`SeedSpec`: no shared
state, safe to call from any number of threads.
"""

from __future__ import annotations

import numpy as np

from .fgn import FgnConfig, sample_fgn  # noqa: F401  (package surface)
from .seeding import SeedSpec


def sample_gaussian_iid(seed: SeedSpec, n: int) -> np.ndarray:
    """``n`` i.i.d. standard normal draws."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return seed.generator().standard_normal(n)


def sample_compensated_poisson_increments(seed: SeedSpec, lam: float, n: int) -> np.ndarray:
    """Unit-time increments of a compensated Poisson process.

    Each draw is Poisson(lam) - lam: mean 0, variance lam.  numpy's Poisson
    sampler uses inversion for small intensities and a transformed-rejection
    method for large ones.
    """
    if lam <= 0:
        raise ValueError(f"lam must be positive, got {lam}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    gen = seed.generator()
    return gen.poisson(lam, n).astype(np.float64) - lam
