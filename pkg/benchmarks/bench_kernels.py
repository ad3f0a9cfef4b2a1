#!/usr/bin/env python3
"""Benchmark the compiled recursion kernel against the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--sizes 10000,100000,1000000]

Also verifies that the two backends produce bit-identical paths on every
benchmarked size.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from archliq import SeedSpec
from archliq import _kernels_py

try:
    from archliq import _kernels as _compiled
except ImportError:
    _compiled = None


def time_backend(fn, eps, liq, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn(eps, liq, 1.0, 0.1, 0.5, 1.7)
        best = min(best, time.perf_counter() - start)
    return best


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="10000,100000,1000000")
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    if _compiled is None:
        print("compiled kernel not built; timing the pure-Python backend only")
    header = f"{'n':>9} {'python':>12} {'compiled':>12} {'speedup':>9}  bitwise"
    print(header)
    print("-" * len(header))
    for n in sizes:
        gen = SeedSpec(0).generator()
        eps = gen.standard_normal(n)
        liq = gen.standard_normal(n) ** 2
        t_py = time_backend(_kernels_py.arch_recursion, eps, liq, args.repeats)
        if _compiled is None:
            print(f"{n:>9} {t_py * 1e3:>10.2f}ms {'-':>12} {'-':>9}")
            continue
        t_c = time_backend(_compiled.arch_recursion, eps, liq, args.repeats)
        out_py = _kernels_py.arch_recursion(eps, liq, 1.0, 0.1, 0.5, 1.7)
        out_c = _compiled.arch_recursion(eps, liq, 1.0, 0.1, 0.5, 1.7)
        identical = (
            out_py[2] == out_c[2]
            and np.array_equal(out_py[0], out_c[0])
            and np.array_equal(out_py[1], out_c[1])
        )
        print(
            f"{n:>9} {t_py * 1e3:>10.2f}ms {t_c * 1e3:>10.2f}ms "
            f"{t_py / t_c:>8.1f}x  {'yes' if identical else 'NO'}"
        )
        if not identical:
            return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
