"""Kernel backend selection: compiled extension when available, pure Python otherwise.

Set ARCHLIQ_PURE_PYTHON=1 to force the fallback (used by the benchmark and
the backend-equivalence tests).  Both backends are bit-identical, so the
choice never changes results, only speed.
"""

from __future__ import annotations

import os

import numpy as np

from . import _kernels_py

OVERFLOW_LIMIT = _kernels_py.OVERFLOW_LIMIT

if os.environ.get("ARCHLIQ_PURE_PYTHON"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

def arch_recursion(eps, liq, alpha0, alpha1, l1, init_x_squared):
    """Run the volatility recursion on the active backend.

    See :func:`archliq._kernels_py.arch_recursion` for the contract.
    """
    eps = np.ascontiguousarray(eps, dtype=np.float64)
    liq = np.ascontiguousarray(liq, dtype=np.float64)
    return _impl.arch_recursion(eps, liq, alpha0, alpha1, l1, init_x_squared)


def backend() -> str:
    """Name of the active kernel backend: "compiled" or "python"."""
    return BACKEND
