# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loop for the volatility recursion.

Must stay operation-for-operation identical to _kernels_py.arch_recursion;
tests assert bitwise agreement between the two backends.
"""

import numpy as np

cdef double OVERFLOW_LIMIT = 1e300


def arch_recursion(double[::1] eps, double[::1] liq, double alpha0, double alpha1,
                   double l1, double init_x_squared):
    if eps.shape[0] != liq.shape[0]:
        raise ValueError("eps and liq must have equal length")
    cdef Py_ssize_t n = eps.shape[0] + 1
    x_squared = np.empty(n)
    sigma_squared = np.empty(n)
    cdef double[::1] xs = x_squared
    cdef double[::1] ss = sigma_squared
    cdef double x = init_x_squared
    cdef double s2, e
    cdef Py_ssize_t t, bad = -1
    xs[0] = init_x_squared
    ss[0] = init_x_squared
    with nogil:
        for t in range(1, n):
            s2 = alpha0 + alpha1 * x + l1 * liq[t - 1]
            e = eps[t - 1]
            x = s2 * (e * e)
            ss[t] = s2
            xs[t] = x
            if not (s2 <= OVERFLOW_LIMIT and x <= OVERFLOW_LIMIT):
                bad = t
                break
    return x_squared, sigma_squared, bad
