"""Acceptance gate: one test per criterion, each printing a pass/fail
line (run with -s to see them live).  Tolerances are pinned here:
printed table values match within 0.5 percent relative (the growth
constant A_kappa may sit below its rounded-up print, down to -5
percent), alpha upper bounds carry the same print tolerance, and the
sampled property suites must pass with zero violations.
"""

import math
import subprocess
import sys
import time

import numpy as np

from zetabounds import (
    PrecisionContext,
    TrigPoly,
    check_corollary4_range,
    check_lemma5_small_t,
    check_lemma8_small_t,
    trig_criteria,
    trig_search,
    spot_check,
    zeta_complex,
    eta_oracle,
    build_reference_certificate,
)
from zetabounds.optimize import reproduce_table
from zetabounds import formulas as F
from zetabounds import tables as T

CTX = PrecisionContext(128)
CTX64 = PrecisionContext(64)
TOL = 0.005


def _report(name: str, ok: bool, detail: str = ""):
    print(f"{'PASS' if ok else 'FAIL'} {name}" + (f": {detail}" if detail else ""))
    assert ok, f"{name} failed: {detail}"


def test_criterion_1_growth_table():
    start = time.time()
    rows = reproduce_table(1, CTX)
    ok = True
    for row in rows:
        comp, printed = row["computed"], row["printed"]
        ok &= abs(comp["omega2"] / printed["omega2"] - 1) <= TOL
        ok &= abs(comp["B"] / printed["B"] - 1) <= TOL
        ok &= 0.95 * printed["a_kappa"] <= comp["a_kappa"] \
            <= 1.005 * printed["a_kappa"]
    elapsed = time.time() - start
    _report("criterion 1 (growth-constant table, 4 rows)",
            ok and elapsed < 1.0, f"{elapsed:.2f}s")


def test_criterion_2_strip_table():
    start = time.time()
    rows = reproduce_table(2, CTX)
    ok = all(abs(r["deviation"]) <= TOL for r in rows) and len(rows) == 6
    elapsed = time.time() - start
    _report("criterion 2 (strip-constant table, 6 rows)",
            ok and elapsed < 1.0, f"{elapsed:.2f}s")


def test_criterion_3_r1_table_with_reoptimization():
    start = time.time()
    rows = reproduce_table(3, CTX, reoptimize=True, budget=1600)
    ok = True
    worst = 0.0
    for r in rows:
        worst = max(worst, abs(r["deviation"]))
        ok &= r["valid"] and abs(r["deviation"]) <= TOL
        ok &= r["alpha_ok"]
        ok &= r["reopt_ok"]
    elapsed = time.time() - start
    _report("criterion 3 (sloped-region table, 22 rows, incl. re-optimization)",
            ok and elapsed < 300.0,
            f"worst deviation {worst:.4%}, {elapsed:.1f}s")


def test_criterion_4_k1_and_k2_tables():
    start = time.time()
    ok = True
    for n in (4, 6):
        for r in reproduce_table(n, CTX):
            ok &= r["valid"] and abs(r["deviation"]) <= TOL
    elapsed = time.time() - start
    _report("criterion 4 (1-line tables, 3+3 rows)",
            ok and elapsed < 60.0, f"{elapsed:.1f}s")


def test_criterion_5_r2_table():
    start = time.time()
    rows = reproduce_table(5, CTX)
    ok = len(rows) == 14 and all(
        r["valid"] and abs(r["deviation"]) <= TOL for r in rows)
    elapsed = time.time() - start
    _report("criterion 5 (reciprocal table, 14 rows)",
            ok and elapsed < 60.0, f"{elapsed:.1f}s")


def test_criterion_6_verification_suite():
    start = time.time()
    l5 = check_lemma5_small_t(CTX64)
    ok = l5.outcome == "certified"
    l8 = check_lemma8_small_t(CTX64)
    ok &= l8.outcome == "certified"
    c4 = check_corollary4_range(CTX64)
    ok &= c4.outcome == "certified"
    rep = trig_criteria(TrigPoly((3.0, 4.0, 1.0)))
    ok &= rep.nonneg and abs(rep.min_value) <= 1e-10
    ok &= abs(rep.argmin - math.pi) <= 5e-3
    ok &= rep.coeff_sum == 8.0 and rep.reciprocal_style and rep.ratio == 0.75
    for degree in (2, 3, 4):
        ok &= trig_search(degree, grid_resolution=0.05) == []
    elapsed = time.time() - start
    _report("criterion 6 (verification suite)",
            ok and elapsed < 600.0, f"{elapsed:.1f}s")


def test_criterion_7_property_suites():
    start = time.time()
    rng = np.random.default_rng(20240809)
    ok = True

    # ball containment under precision doubling, 1000 points
    for _ in range(1000):
        sigma = rng.uniform(1.1, 3.0)
        t = rng.uniform(-100.0, 100.0)
        a = zeta_complex(complex(sigma, t), CTX64)
        b = zeta_complex(complex(sigma, t), CTX)
        ok &= abs(a.mid - b.mid) + b.rad <= 2 * a.rad

    # alternating-series cross-check on a 100-point grid
    for sigma in np.linspace(1.1, 3.0, 10):
        for t in np.linspace(-90.0, 90.0, 10):
            z = zeta_complex(complex(sigma, t), CTX)
            e = eta_oracle(complex(sigma, t), CTX)
            ok &= abs(z.mid - e.mid) <= z.rad + e.rad

    # dyadic index chain, 1000 log-spaced points per growth row
    for row in T.GROWTH_ROWS:
        ts = np.exp(np.linspace(math.log(row.t0 * 1.001),
                                math.log(row.t0 * 1e5), 1000))
        for t in ts:
            k = F.k_of_t(float(t), row.omega1)
            lt, llt = math.log(t), math.log(math.log(t))
            ok &= k >= 3
            ok &= k / (2 ** k - 2) >= row.omega2 * llt * llt / lt
            ok &= 1.0 / (2 ** k - 2) <= 8 * llt / (3 * row.omega1 * lt)

    # certificate spot checks: 200 samples each, t <= 1e4, zero violations
    max_ratio = 0.0
    for name in ("r1-w22", "k1-500", "r2-w22-500", "k2-500"):
        cert = build_reference_certificate(name, CTX64, low_budget=700)
        rep = spot_check(cert, 200, 1e4, CTX64)
        ok &= rep.outcome == "passed"
        max_ratio = max(max_ratio, rep.max_ratio)
    elapsed = time.time() - start
    _report("criterion 7 (property suites)",
            ok and elapsed < 600.0,
            f"max spot ratio {max_ratio:.3g}, {elapsed:.1f}s")


def test_criterion_8_deterministic_reports(tmp_path):
    start = time.time()
    argv = [sys.executable, "-m", "zetabounds.cli", "optimize", "k2",
            "--t0", "500", "--seed", "20240809", "--budget", "1200"]
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    ra = subprocess.run(argv + ["--out", str(a)], capture_output=True)
    rb = subprocess.run(argv + ["--out", str(b)], capture_output=True)
    ok = ra.returncode == 0 and rb.returncode == 0 \
        and a.read_bytes() == b.read_bytes()
    elapsed = time.time() - start
    _report("criterion 8 (byte-identical reports under a fixed seed)",
            ok, f"{elapsed:.1f}s")
