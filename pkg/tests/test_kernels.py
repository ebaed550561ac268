"""The numba and numpy kernel backends must agree exactly."""

import numpy as np
import pytest

from zetabounds import kernels


def test_batch_min_backends_agree():
    rng = np.random.default_rng(5)
    rows = rng.uniform(-1, 1, size=(64, 5))
    table = kernels.cos_table(4, 257)
    a = kernels._batch_min_numpy(rows, table)
    if kernels.USE_NUMBA:
        b = kernels._batch_min_loop(np.ascontiguousarray(rows), table)
        assert np.array_equal(a, b)
    # identity polynomial scaled: min of 2(1+cos)^2 is 0
    idx = kernels.batch_min_cospoly(np.array([[3.0, 4.0, 1.0]]), n_theta=4096)
    assert abs(idx[0]) < 1e-5


def test_search_backends_agree():
    table = kernels.cos_table(3, 181)
    inner = np.linspace(-1, 1, 9)
    a0 = np.linspace(0.05, 0.70, 6)
    out_a = np.zeros((256, 4))
    out_b = np.zeros((256, 4))
    na = kernels._search_numpy(a0, inner, 2, table, 2.0, 0.75, 1e-12, out_a)
    if kernels.USE_NUMBA:
        nb = kernels._search_loop(a0, inner, 2, table, 2.0, 0.75, 1e-12, out_b)
        assert na == nb
        assert np.array_equal(out_a[:na], out_b[:nb])


def test_cospoly_samples_matches_direct():
    coeffs = np.array([0.3, 1.0, -0.2, 0.05])
    vals = kernels.cospoly_samples(coeffs, 512)
    thetas = np.linspace(0, 2 * np.pi, 512, endpoint=False)
    ref = sum(c * np.cos(n * thetas) for n, c in enumerate(coeffs))
    assert np.allclose(vals, ref, atol=1e-14)


def test_enumerate_search_degree_guard():
    with pytest.raises(ValueError):
        kernels.enumerate_search(1, 0.1)


def test_env_flag_selects_numpy(monkeypatch):
    import importlib
    monkeypatch.setenv("ZETABOUNDS_NO_NUMBA", "1")
    mod = importlib.reload(kernels)
    try:
        assert mod.USE_NUMBA is False
        hits = mod.enumerate_search(2, 0.2)
        assert hits.shape[1] == 3
    finally:
        monkeypatch.delenv("ZETABOUNDS_NO_NUMBA")
        importlib.reload(kernels)
