#!/usr/bin/env python3
"""Time the numba kernels against the pure-numpy fallback.

    python benchmarks/bench_kernels.py [--repeat N] [--sizes 4 9 16] [--descent-iters K]

Reports the median wall time per call for the Jacobi eigensolver and the
trace-distance descent, after one warm-up call that absorbs JIT compilation.
"""

import argparse
import statistics
import time

import numpy as np

from cohdetect import kernels
from cohdetect.linalg import EIG_TOL, MAX_SWEEPS
from cohdetect.states import random_density


def median_time(fn, repeat):
    fn()  # warm-up / compile
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def bench_jacobi(mod, n, repeat):
    rng = np.random.default_rng(n)
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    a = np.ascontiguousarray((g + g.conj().T) / 2)
    return median_time(lambda: mod.jacobi_eigh(a, EIG_TOL, MAX_SWEEPS), repeat)


def bench_descent(mod, n, repeat, iters):
    rho = np.ascontiguousarray(random_density(n, n).mat)
    start = np.full(n, 1.0 / n)
    # window > iters, so every run performs exactly ``iters`` steps
    return median_time(
        lambda: mod.trace_distance_descent(rho, start, iters, 0.5, 0.0, iters + 1, EIG_TOL,
                                           MAX_SWEEPS),
        max(1, repeat // 10))


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=50)
    p.add_argument("--sizes", type=int, nargs="+", default=[4, 9, 16])
    p.add_argument("--descent-iters", type=int, default=200)
    args = p.parse_args(argv)

    if "numba" not in kernels.BACKENDS:
        print("numba unavailable; only the numpy backend can be timed")
    names = sorted(kernels.BACKENDS)
    print(f"{'kernel':<10}{'n':>4}" + "".join(f"{b + ' [ms]':>14}" for b in names)
          + (f"{'speedup':>10}" if len(names) == 2 else ""))
    benches = (("jacobi", lambda mod, n: bench_jacobi(mod, n, args.repeat)),
               ("descent", lambda mod, n: bench_descent(mod, n, args.repeat,
                                                        args.descent_iters)))
    for label, bench in benches:
        for n in args.sizes:
            t = {b: bench(kernels.BACKENDS[b], n) for b in names}
            row = f"{label:<10}{n:>4}" + "".join(f"{1e3 * t[b]:>14.3f}" for b in names)
            if len(names) == 2:
                row += f"{t['numpy'] / t['numba']:>9.1f}x"
            print(row)


if __name__ == "__main__":
    main()
