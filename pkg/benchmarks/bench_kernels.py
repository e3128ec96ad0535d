#!/usr/bin/env python3
"""Throughput comparison of the compiled and pure-Python simulation kernels.

Runs the rounding-algorithm Monte Carlo kernel on a few representative
instances with both backends and reports trials/second plus the speedup.

Usage: python3 benchmarks/bench_kernels.py [--trials N]
"""

import argparse
import time

from buyback import kernels
from buyback.harness import GeneratorSpec, generate

CASES = [
    ("geometric base=1.05 n=200", GeneratorSpec.geometric(1.05, 200)),
    ("uniform n=100", GeneratorSpec.random_matroid("uniform", 100, seed=1)),
    ("partition n=100", GeneratorSpec.random_matroid("partition", 100, seed=2)),
    ("graphic n=100", GeneratorSpec.random_matroid("graphic", 100, seed=3)),
]


def bench(instance, f, r, trials, seed, force_pure):
    start = time.perf_counter()
    kernels.randalg_prefix_stats(instance, f, r, trials, seed,
                                 force_pure=force_pure)
    return trials / (time.perf_counter() - start)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=2000,
                        help="compiled-backend trial count (pure runs 1/10)")
    args = parser.parse_args()

    print(f"compiled backend available: {kernels.HAVE_FAST} "
          f"(active: {kernels.backend_name()})")
    print(f"{'instance':<28} {'pure tr/s':>12} {'cython tr/s':>12} {'speedup':>9}")
    for name, spec in CASES:
        inst = generate(spec)
        pure_rate = bench(inst, 1.0, 4.0, max(1, args.trials // 10), 7,
                          force_pure=True)
        if kernels.HAVE_FAST:
            fast_rate = bench(inst, 1.0, 4.0, args.trials, 7, force_pure=False)
            print(f"{name:<28} {pure_rate:>12.0f} {fast_rate:>12.0f} "
                  f"{fast_rate / pure_rate:>8.1f}x")
        else:
            print(f"{name:<28} {pure_rate:>12.0f} {'n/a':>12} {'n/a':>9}")


if __name__ == "__main__":
    main()
