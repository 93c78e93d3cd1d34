"""Time the power-iteration kernel under each available backend.

Runs the same seeded spectral-norm problems through the compiled extension
and the pure-Python fallback and prints one table row per problem:

    python3 benchmarks/bench_power.py [--repeats N]

Problems cover the shapes the library actually produces: banded one-variable
truncations, free-monoid truncations that double per level, and dense Grams.
"""

import argparse
import time

import numpy as np

from fockmult import (
    FreeMonoid,
    NonNegIntegers,
    available_backends,
    delta,
    make_pair,
    random_polynomial,
    spectral_norm,
    window,
)


def problems():
    zp = NonNegIntegers()
    rng = np.random.default_rng(5)
    phi = random_polynomial(rng, window(zp, 8), normalize=True)
    for level in (64, 256, 1024):
        yield f"zplus deg-8 level {level}", make_pair(zp, phi, level).lmat.mat

    free = FreeMonoid(2)
    w1 = window(free, 1)
    gens = delta(w1, (1,)) + delta(w1, (2,))
    for level in (6, 8, 10):
        yield f"free(2) generators level {level}", make_pair(free, gens, level).lmat.mat

    for n in (128, 256):
        a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        yield f"dense {n}x{n}", a


def best_time(mat, backend, repeats):
    est, dt = None, float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        est = spectral_norm(mat, tol=1e-12, backend=backend)
        dt = min(dt, time.perf_counter() - t0)
    return est, dt


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=3,
                        help="keep the best of this many runs (default 3)")
    args = parser.parse_args()

    backends = available_backends()
    print(f"backends: {', '.join(backends)}")
    header = f"{'problem':<28} {'shape':>12} {'iters':>6}"
    for b in backends:
        header += f" {b + ' ms':>12}"
    if len(backends) > 1:
        header += f" {'speedup':>8}"
    print(header)
    print("-" * len(header))

    for name, mat in problems():
        times = {}
        est = None
        for b in backends:
            est, times[b] = best_time(mat, b, args.repeats)
        shape = f"{mat.shape[0]}x{mat.shape[1]}"
        row = f"{name:<28} {shape:>12} {est.iterations:>6}"
        for b in backends:
            row += f" {times[b] * 1e3:>12.3f}"
        if len(backends) > 1:
            row += f" {times['python'] / times['cython']:>7.1f}x"
        print(row)


if __name__ == "__main__":
    main()
