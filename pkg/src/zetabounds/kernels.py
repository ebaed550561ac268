"""Hot numeric kernels for the cosine-polynomial search.

Two interchangeable backends compute identical results:

  * numba @njit loops (default when numba imports cleanly), and
  * a pure-numpy path, selected by setting ZETABOUNDS_NO_NUMBA=1
    (or when numba is unavailable).

The numpy path accumulates sums in the same order as the loops, so the
two backends agree bit-for-bit; benchmarks/bench_kernels.py compares
their throughput.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = [
    "USE_NUMBA",
    "batch_min_cospoly",
    "enumerate_search",
    "cospoly_samples",
]

_ENV_FLAG = "ZETABOUNDS_NO_NUMBA"


def _numba_wanted() -> bool:
    if os.environ.get(_ENV_FLAG, "").strip().lower() in {"1", "true", "yes", "on"}:
        return False
    try:
        import numba  # noqa: F401
    except Exception:
        return False
    return True


USE_NUMBA = _numba_wanted()

if USE_NUMBA:
    from numba import njit
else:
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def deco(func):
            return func

        return deco


def cos_table(degree: int, n_theta: int) -> np.ndarray:
    """cos(n * theta_k) for n = 0..degree on a uniform grid of [0, 2pi)."""
    thetas = np.linspace(0.0, 2.0 * np.pi, n_theta, endpoint=False)
    return np.cos(np.outer(np.arange(degree + 1), thetas))


def cospoly_samples(coeffs: np.ndarray, n_theta: int = 10000) -> np.ndarray:
    """Values of sum_n a_n cos(n theta) on the uniform theta grid."""
    coeffs = np.asarray(coeffs, dtype=np.float64)
    table = cos_table(len(coeffs) - 1, n_theta)
    out = np.full(n_theta, coeffs[0])
    for n in range(1, len(coeffs)):
        out = out + coeffs[n] * table[n]
    return out


# ---------------------------------------------------------------------------
# batch minimum of many polynomials over a shared theta grid
# ---------------------------------------------------------------------------

@njit(cache=True)
def _batch_min_loop(coeff_rows, table):
    n_rows, n_coeff = coeff_rows.shape
    n_theta = table.shape[1]
    out = np.empty(n_rows)
    for i in range(n_rows):
        best = 1e300
        for k in range(n_theta):
            acc = coeff_rows[i, 0]
            for n in range(1, n_coeff):
                acc = acc + coeff_rows[i, n] * table[n, k]
            if acc < best:
                best = acc
        out[i] = best
    return out


def _batch_min_numpy(coeff_rows, table):
    n_rows, n_coeff = coeff_rows.shape
    acc = np.broadcast_to(coeff_rows[:, 0:1], (n_rows, table.shape[1])).copy()
    for n in range(1, n_coeff):
        acc = acc + coeff_rows[:, n:n + 1] * table[n][None, :]
    return acc.min(axis=1)


def batch_min_cospoly(coeff_rows: np.ndarray, n_theta: int = 512) -> np.ndarray:
    """min over theta samples of each row's cosine polynomial."""
    coeff_rows = np.ascontiguousarray(coeff_rows, dtype=np.float64)
    table = cos_table(coeff_rows.shape[1] - 1, n_theta)
    if USE_NUMBA:
        return _batch_min_loop(coeff_rows, table)
    return _batch_min_numpy(coeff_rows, table)


# ---------------------------------------------------------------------------
# exhaustive search for nonnegative polynomials with small coefficient sum
# ---------------------------------------------------------------------------
#
# Candidates are a0 + cos(theta) + sum_{n=2..N} a_n cos(n theta) with a0 on
# a0_grid and each a_n on inner_grid (row-major enumeration).  A candidate
# survives when |a0| + 1 + sum |a_n| <= sum_cap, a0/a1 < ratio_cap, and the
# sampled minimum is >= -tol.

@njit(cache=True)
def _search_loop(a0_grid, inner_grid, n_inner, table, sum_cap, ratio_cap, tol,
                 out_buf):
    m = inner_grid.shape[0]
    n_theta = table.shape[1]
    total = 1
    for _ in range(n_inner):
        total *= m
    count = 0
    coeff = np.empty(n_inner)
    for ia0 in range(a0_grid.shape[0]):
        a0 = a0_grid[ia0]
        if a0 >= ratio_cap or a0 <= 0.0:
            continue
        for flat in range(total):
            idx = flat
            ssum = abs(a0) + 1.0
            for pos in range(n_inner):
                c = inner_grid[idx % m]
                idx //= m
                coeff[pos] = c
                ssum += abs(c)
            if ssum > sum_cap:
                continue
            ok = True
            for k in range(n_theta):
                acc = a0 + table[1, k]
                for pos in range(n_inner):
                    acc = acc + coeff[pos] * table[pos + 2, k]
                if acc < -tol:
                    ok = False
                    break
            if ok:
                if count < out_buf.shape[0]:
                    out_buf[count, 0] = a0
                    out_buf[count, 1] = 1.0
                    for pos in range(n_inner):
                        out_buf[count, pos + 2] = coeff[pos]
                count += 1
    return count


def _search_numpy(a0_grid, inner_grid, n_inner, table, sum_cap, ratio_cap, tol,
                  out_buf, block=16384):
    m = len(inner_grid)
    total = m ** n_inner
    count = 0
    for start in range(0, total, block):
        flat = np.arange(start, min(start + block, total))
        digits = np.empty((len(flat), n_inner))
        idx = flat.copy()
        for pos in range(n_inner):
            digits[:, pos] = inner_grid[idx % m]
            idx //= m
        abs_sum = 1.0 + np.abs(digits).sum(axis=1)
        for a0 in a0_grid:
            if a0 >= ratio_cap or a0 <= 0.0:
                continue
            keep = (abs(a0) + abs_sum) <= sum_cap
            if not keep.any():
                continue
            cand = digits[keep]
            acc = np.broadcast_to(a0 + table[1][None, :],
                                  (cand.shape[0], table.shape[1])).copy()
            for pos in range(n_inner):
                acc = acc + cand[:, pos:pos + 1] * table[pos + 2][None, :]
            good = acc.min(axis=1) >= -tol
            for row in cand[good]:
                if count < out_buf.shape[0]:
                    out_buf[count, 0] = a0
                    out_buf[count, 1] = 1.0
                    out_buf[count, 2:2 + n_inner] = row
                count += 1
    return count


def enumerate_search(degree: int, grid_resolution: float, coeff_bound: float = 1.0,
                     ratio_cap: float = 0.75, sum_cap: float = 2.0,
                     n_theta: int = 720, tol: float = 1e-12,
                     max_hits: int = 4096, a0_values=None) -> np.ndarray:
    """Grid-enumerate candidate polynomials; return surviving coefficient
    rows (a0, 1, a2, .., aN).  Expected empty for ratio_cap <= 3/4.

    a0_values overrides the default offset a0 grid (used to probe the
    ratio = 3/4 boundary family explicitly).
    """
    if degree < 2:
        raise ValueError("degree must be at least 2")
    n_inner = degree - 1
    steps = int(round(2.0 * coeff_bound / grid_resolution))
    inner_grid = np.linspace(-coeff_bound, coeff_bound, steps + 1)
    if a0_values is not None:
        a0_grid = np.asarray(a0_values, dtype=np.float64)
        ratio_cap = float(max(ratio_cap, a0_grid.max() + grid_resolution))
    else:
        a0_steps = int(round(ratio_cap / grid_resolution))
        a0_grid = np.linspace(grid_resolution / 2, ratio_cap - grid_resolution / 2,
                              max(a0_steps, 1))
    table = cos_table(degree, n_theta)
    out = np.zeros((max_hits, degree + 1))
    fn = _search_loop if USE_NUMBA else _search_numpy
    count = fn(a0_grid, inner_grid, n_inner, table, sum_cap, ratio_cap, tol, out)
    return out[:min(count, max_hits)].copy()
