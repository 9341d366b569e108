#!/usr/bin/env python3
"""Time the numba kernels against their pure-numpy fallbacks.

Run from the repository root:

    python benchmarks/bench_kernels.py [--repeats 5]

The numba column reports post-JIT timings (one warmup call per kernel).
"""

import argparse
import time

import numpy as np

from deltoid import _kernels as K
from deltoid import _rng, barbell_matrix


def best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    rows = []

    grid = np.linspace(-1, 1, 256) + 0.5 / 256
    cases = [("raster 256x256, n=64",
              lambda f: f(grid, grid, 64),
              K.raster_magnitudes_numba, K.raster_magnitudes_numpy)]

    P = barbell_matrix(1000, 0.016, seed=0)
    x = np.linspace(0.0, 1.0, P.dimension)
    row_ids = np.repeat(np.arange(P.dimension), np.diff(P.row_offsets))

    def run_csr_numba(f):
        for _ in range(200):
            f(P.row_offsets, P.col_indices, P.values, x)

    def run_csr_numpy(f):
        for _ in range(200):
            f(row_ids, P.col_indices, P.values, x, P.dimension)

    base = _rng.seed_base(0)
    cases.append((f"csr matvec x200, nnz={P.nnz}",
                  None, run_csr_numba, run_csr_numpy))
    cases.append(("walk 200k trials, n=20",
                  lambda f: f(20, 200_000, base),
                  K.walk_final_states_numba, K.walk_final_states_numpy))

    print(f"{'kernel':<32} {'numba':>10} {'numpy':>10} {'speedup':>8}")
    for name, call, numba_fn, numpy_fn in cases:
        if name.startswith("csr"):
            if K.csr_matvec_numba is None:
                t_nb = None
            else:
                numba_fn(K.csr_matvec_numba)  # warmup/JIT
                t_nb = best_of(lambda: numba_fn(K.csr_matvec_numba), args.repeats)
            t_np = best_of(lambda: numpy_fn(K.csr_matvec_numpy), args.repeats)
        else:
            if numba_fn is None:
                t_nb = None
            else:
                call(numba_fn)  # warmup/JIT
                t_nb = best_of(lambda: call(numba_fn), args.repeats)
            t_np = best_of(lambda: call(numpy_fn), args.repeats)
        if t_nb is None:
            print(f"{name:<32} {'n/a':>10} {t_np * 1e3:>8.2f}ms {'-':>8}")
        else:
            print(f"{name:<32} {t_nb * 1e3:>8.2f}ms {t_np * 1e3:>8.2f}ms "
                  f"{t_np / t_nb:>7.1f}x")
    return rows


if __name__ == "__main__":
    main()
