"""Pure-Python reference implementation of the hot recursion kernel.

Kept operation-for-operation identical to the compiled extension so both
backends produce bit-identical paths.
"""

from __future__ import annotations

import numpy as np

OVERFLOW_LIMIT = 1e300


def arch_recursion(eps, liq, alpha0, alpha1, l1, init_x_squared):
    """Run sigma_t^2 = alpha0 + alpha1 x_{t-1}^2 + l1 L_{t-1} forward.

    ``eps`` holds the innovations for steps 1..n-1 and ``liq`` the liquidity
    values driving those steps; index 0 of the outputs is the pinned initial
    condition (x^2[0] = sigma^2[0] = init_x_squared).

    Returns (x_squared, sigma_squared, bad) where ``bad`` is the first index
    at which a value exceeded OVERFLOW_LIMIT or went nonfinite, or -1.
    """
    if eps.shape[0] != liq.shape[0]:
        raise ValueError("eps and liq must have equal length")
    n = eps.shape[0] + 1
    x_squared = np.empty(n)
    sigma_squared = np.empty(n)
    x_squared[0] = init_x_squared
    sigma_squared[0] = init_x_squared
    eps_list = eps.tolist()
    liq_list = liq.tolist()
    x = float(init_x_squared)
    for t in range(1, n):
        s2 = alpha0 + alpha1 * x + l1 * liq_list[t - 1]
        e = eps_list[t - 1]
        x = s2 * (e * e)
        sigma_squared[t] = s2
        x_squared[t] = x
        if not (s2 <= OVERFLOW_LIMIT and x <= OVERFLOW_LIMIT):
            return x_squared, sigma_squared, t
    return x_squared, sigma_squared, -1
