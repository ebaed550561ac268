#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Both backends are loaded into one process (the env flag only controls
the default dispatch), warmed up, and timed on identical inputs:

  * batch minima of cosine polynomials over a shared theta grid, and
  * the exhaustive nonnegative-polynomial grid search at degrees 3-4.

Run directly:  python benchmarks/bench_kernels.py
"""

import time

import numpy as np

from zetabounds import kernels


def median_time(fn, *args, repeats=5, warmup=1):
    for _ in range(warmup):
        fn(*args)
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t0)
    return sorted(times)[len(times) // 2]


def bench_batch_min():
    print("batch_min_cospoly: rows x 6 coefficients, 512 theta samples")
    rng = np.random.default_rng(0)
    for rows in (200, 2000, 20000):
        coeffs = np.ascontiguousarray(rng.uniform(-1, 1, size=(rows, 6)))
        table = kernels.cos_table(5, 512)
        t_np = median_time(kernels._batch_min_numpy, coeffs, table)
        line = f"  rows={rows:6d}: numpy {t_np*1e3:8.2f} ms"
        if kernels.USE_NUMBA:
            t_nb = median_time(kernels._batch_min_loop, coeffs, table)
            line += f", numba {t_nb*1e3:8.2f} ms, speedup {t_np/t_nb:5.1f}x"
            a = kernels._batch_min_numpy(coeffs, table)
            b = kernels._batch_min_loop(coeffs, table)
            assert np.array_equal(a, b), "backend mismatch"
        print(line)


def bench_search():
    print("enumerate_search: full grid scan, 720 theta samples")
    for degree, res in ((3, 0.05), (4, 0.1), (4, 0.05)):
        n_inner = degree - 1
        steps = int(round(2.0 / res)) + 1
        a0_steps = max(int(round(0.75 / res)), 1)
        inner = np.linspace(-1.0, 1.0, steps)
        a0 = np.linspace(res / 2, 0.75 - res / 2, a0_steps)
        table = kernels.cos_table(degree, 720)

        def run_np():
            out = np.zeros((4096, degree + 1))
            return kernels._search_numpy(a0, inner, n_inner, table, 2.0,
                                         0.75, 1e-12, out)

        t_np = median_time(run_np, repeats=3)
        cand = a0_steps * steps ** n_inner
        line = (f"  degree={degree} res={res}: {cand:9d} candidates, "
                f"numpy {t_np*1e3:8.1f} ms")
        if kernels.USE_NUMBA:
            def run_nb():
                out = np.zeros((4096, degree + 1))
                return kernels._search_loop(a0, inner, n_inner, table, 2.0,
                                            0.75, 1e-12, out)

            t_nb = median_time(run_nb, repeats=3)
            line += f", numba {t_nb*1e3:8.1f} ms, speedup {t_np/t_nb:5.1f}x"
            assert run_np() == run_nb(), "backend mismatch"
        print(line)


if __name__ == "__main__":
    print(f"numba available and enabled: {kernels.USE_NUMBA}")
    bench_batch_min()
    bench_search()
