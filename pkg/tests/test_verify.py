"""Region certifications, cosine-polynomial criteria, and certificate
spot checks."""

import math

import mpmath
import numpy as np
import pytest
from mpmath import mp

from zetabounds import (
    PrecisionContext,
    TrigPoly,
    check_lemma5_small_t,
    check_lemma5_large_t,
    check_lemma8_small_t,
    check_corollary4_range,
    trig_criteria,
    trig_search,
    spot_check,
    zeta_complex,
    zeta_and_prime,
    build_reference_certificate,
)
from zetabounds import verify as V

CTX = PrecisionContext(64)


# ---------------------------------------------------------------------------
# wide-strip small-|t| region
# ---------------------------------------------------------------------------

@pytest.fixture(scope="module")
def lemma5_small():
    return check_lemma5_small_t(CTX)


def test_lemma5_small_certifies(lemma5_small):
    assert lemma5_small.outcome == "certified"
    assert lemma5_small.witness is None
    # the margin is nearly attained: the worst certified gap is tiny
    assert -1e-3 < lemma5_small.worst_gap < 0


def test_lemma5_small_corner_probe():
    # direct evaluation at s = 1/2: |(-1/2) zeta(1/2)| - 1.546*1.5*log 1.5
    ball = zeta_complex(complex(0.5, 1e-30), CTX)
    lhs = 0.5 * abs(ball).hi()
    rhs = 1.546 * 1.5 * math.log(1.5)
    assert lhs - rhs < -0.21
    assert lhs - rhs == pytest.approx(-0.2101, abs=2e-4)
    with mp.workprec(120):
        assert abs(float(ball.mid.real) - (-1.4603545)) < 1e-6


def test_lemma5_small_symmetry_note(lemma5_small):
    assert any("symmetry" in n for n in lemma5_small.notes)


def test_lemma5_small_double_density_stability():
    # re-running with a deeper budget must still certify
    again = check_lemma5_small_t(CTX, max_depth=52)
    assert again.outcome == "certified"


# ---------------------------------------------------------------------------
# wide-strip |t| >= 3 sampled inequality
# ---------------------------------------------------------------------------

def test_lemma5_large_certified_and_k3_probe():
    check = check_lemma5_large_t(CTX, samples=150)
    assert check.outcome == "certified"
    # direct k = 3 evaluation at t = 3, sigma_3 = 1/2
    ek = 1.0 / 6.0
    lhs = math.hypot(0.5, 3.0) * 3 ** ek * math.log(3)
    sp1 = math.hypot(1.5, 3.0)
    rhs = sp1 ** (1 + ek) * math.log(sp1)
    assert lhs <= rhs
    # k -> infinity proxy at k = 40: exponents collapse to 1
    ek = 1.0 / (2 ** 40 - 2)
    sk = 1 - 40.0 / (2 ** 40 - 2)
    for t in (3.0, 100.0, 1e6):
        lhs = math.hypot(sk - 1, t) * t ** ek * math.log(t)
        sp1 = math.hypot(sk + 1, t)
        assert lhs <= sp1 ** (1 + ek) * math.log(sp1)


# ---------------------------------------------------------------------------
# 1-line strip small-|t| region
# ---------------------------------------------------------------------------

@pytest.fixture(scope="module")
def lemma8():
    return check_lemma8_small_t(CTX)


def test_lemma8_certifies_on_well_defined_region(lemma8):
    assert lemma8.outcome == "certified"
    assert any("well-defined on the full segment" in n for n in lemma8.notes)


def test_lemma8_point_probes():
    # t -> 0 limit: |(s-1)zeta(s)| -> 1, right side ~ 60.7 at |s+2| = 3
    ball = V._h_ball(1.0, 1e-9, CTX)
    assert abs(ball.hi() - 1.0) < 1e-6
    rhs0 = 1.731 * 3 * math.log(3) / math.log(math.log(3))
    assert ball.hi() <= rhs0
    # direct comparison at t = 3
    ball = V._h_ball(1.0, 3.0, CTX)
    x = math.hypot(3.0, 3.0)
    assert ball.hi() <= 1.731 * x * math.log(x) / math.log(math.log(x))


def test_lemma8_sigma1_side_is_triangle_bound():
    # |(s-1)zeta(s)| <= zeta(sigma1)|s+2| holds because |zeta| <= zeta(sigma1)
    # and |s-1| <= |s+2| for sigma > -1/2
    sigma1 = 11.14
    with mp.workprec(120):
        zk = float(mpmath.zeta(sigma1))
    for t in (0.0, 1.5, 3.0):
        lhs_cap = math.hypot(sigma1 - 1, t) * zk
        assert lhs_cap <= zk * math.hypot(sigma1 + 2, t)


# ---------------------------------------------------------------------------
# small-t range extension
# ---------------------------------------------------------------------------

def test_corollary4_range():
    check = check_corollary4_range(CTX)
    assert check.outcome == "certified"
    assert math.log(math.log(500)) == pytest.approx(1.8258, abs=2e-3)
    assert math.log(math.log(500)) <= 107.7 / 2.079
    assert math.log(math.log(3)) == pytest.approx(0.0940, abs=1e-3)
    # boundary equivalence: dividing by 2.079 log t > 0 preserves the claim
    for t in (3.0, 10.0, 500.0):
        lhs = 107.7 * math.log(t) / math.log(math.log(t))
        assert (lhs >= 2.079 * math.log(t)) == \
            (math.log(math.log(t)) <= 107.7 / 2.079)


# ---------------------------------------------------------------------------
# cosine polynomial criteria
# ---------------------------------------------------------------------------

def test_trig_identity_polynomial():
    rep = trig_criteria(TrigPoly((3.0, 4.0, 1.0)))
    assert rep.nonneg
    assert abs(rep.min_value) <= 1e-10
    assert abs(rep.argmin - math.pi) <= 5e-3
    assert rep.reciprocal_style and rep.coeff_sum == 8.0
    assert rep.zerofree_style
    assert rep.ratio == 0.75
    # the polynomial is exactly 2 (1 + cos theta)^2
    thetas = np.linspace(0, 2 * np.pi, 97)
    vals = 3 + 4 * np.cos(thetas) + np.cos(2 * thetas)
    assert np.allclose(vals, 2 * (1 + np.cos(thetas)) ** 2, atol=1e-12)


def test_trig_degree2_family_requires_equal_weights():
    # (x + y cos)^2 = (x^2+y^2/2) + 2xy cos + (y^2/2) cos2; the coefficient
    # sum criterion forces (x-y)^2 <= 0
    x, y = 1.0, 0.8
    poly = TrigPoly((x * x + y * y / 2, 2 * x * y, y * y / 2))
    rep = trig_criteria(poly)
    assert rep.nonneg
    assert not rep.reciprocal_style
    x = y = 1.0
    rep = trig_criteria(TrigPoly((x * x + y * y / 2, 2 * x * y, y * y / 2)))
    assert rep.reciprocal_style and rep.ratio == 0.75


def test_trig_constant_polynomial():
    rep = trig_criteria(TrigPoly((1.0, 0.0)))
    assert rep.nonneg
    assert not rep.reciprocal_style
    assert rep.ratio is None


def test_trig_negative_polynomial_detected():
    rep = trig_criteria(TrigPoly((0.5, 1.0, 0.0)))
    assert not rep.nonneg
    assert rep.min_value == pytest.approx(-0.5, abs=1e-9)


def test_trig_search_empty_fine_grid():
    assert trig_search(2, grid_resolution=0.02) == []
    assert trig_search(4, grid_resolution=0.1) == []


def test_trig_search_boundary_family_excluded():
    # put the scaled identity (0.75, 1, 0.25) on the grid: the kernel sees
    # it (ratio exactly 3/4) but the strict ratio < 3/4 filter drops it
    from zetabounds import kernels
    rows = kernels.enumerate_search(2, 0.25, ratio_cap=0.7501,
                                    a0_values=[0.75])
    assert any(np.allclose(r, [0.75, 1.0, 0.25]) for r in rows)
    assert trig_search(2, grid_resolution=0.25, a0_values=[0.75]) == []


# ---------------------------------------------------------------------------
# spot checks
# ---------------------------------------------------------------------------

def test_spot_point_probe_k2_500():
    # |1/zeta(1+1000i)| <= K2 log 1000/loglog 1000
    z = zeta_complex(complex(1.0, 1000.0), CTX)
    recip = abs(1 / z)
    bound = 107.7 * math.log(1000) / math.log(math.log(1000))
    assert recip.hi() <= bound


def test_spot_point_probe_r1_w22():
    t = 1e4
    delta = math.log(math.log(t)) / math.log(t)
    sigma = 1 - delta / 22.0
    z, zp = zeta_and_prime(complex(sigma, t), CTX)
    ratio = abs(zp / z)
    assert ratio.hi() <= 5471 / delta


def test_spot_check_reports_pass():
    cert = build_reference_certificate("k2-500", CTX)
    rep = spot_check(cert, 40, 5e3, CTX, seed=3)
    assert rep.outcome == "passed"
    assert rep.max_ratio < 1.0
    rec = rep.as_record()
    assert rec["kind"] == "spot_check" and rec["witness"] is None
