"""Constant constructors and certificate formulas: closed-form anchors,
monotonicity properties, published-row reproduction, and the constraint
closure re-check."""

import math

import mpmath
import numpy as np
import pytest
from mpmath import mp

from zetabounds import (
    PrecisionContext,
    GrowthParams,
    MainLemmaParams,
    WSchedule,
    DomainError,
    ConstraintError,
    omega2,
    a_kappa,
    growth_bound,
    Z_const,
    V1,
    V2,
    C1,
    A3_and_Amax,
    radius_r,
    c1_const,
    alpha_fn,
    Q1,
    Q1_two_regime,
    K1,
    Q2,
    K2,
    zeta_complex,
)
from zetabounds import formulas as F
from zetabounds import tables as T

CTX = PrecisionContext(128)
EE = T.E_E
H = float(T.HEIGHT_H)


# ---------------------------------------------------------------------------
# omega2 / growth rows
# ---------------------------------------------------------------------------

def test_omega2_reference_rows():
    assert omega2(8 / math.e, 3.0) == pytest.approx(0.309, rel=5e-3)
    assert omega2(0.94, H) == pytest.approx(0.941, rel=5e-3)


def test_omega2_case_boundary():
    # direct high-precision evaluation of (1 - 1/e)/log 2 at omega1 = 1
    with mp.workprec(200):
        expected = float((1 - mpmath.exp(-1)) / mpmath.log(2))
    val = omega2(1.0, 100.0)
    assert val == pytest.approx(expected, rel=1e-12)
    # both branches agree at omega1 = 1
    assert omega2(1.0 - 1e-12, 100.0) == pytest.approx(expected, rel=1e-9)


def test_omega2_domain_error():
    with pytest.raises(DomainError):
        omega2(0.5, 2.0)   # loglog t0 < 0 with omega1 < 1


def test_a_kappa_reference_rows():
    for row in T.GROWTH_ROWS:
        val = float(a_kappa(row.kappa, row.t0, CTX).mid)
        assert 0.95 * row.a_kappa <= val <= 1.005 * row.a_kappa


def test_growth_bound_value_and_domain():
    gp = GrowthParams.from_table_row(T.growth_row("ee"), CTX)
    val = growth_bound(EE, gp, CTX)
    with mp.workprec(200):
        expected = 2.5 * mpmath.e ** mpmath.mpf("1.91")
    assert float(val.mid) == pytest.approx(float(expected), rel=1e-10)
    with pytest.raises(DomainError):
        growth_bound(3.0, gp, CTX)
    # sigma = 1 always lies inside the growth strip
    assert 1.0 >= 1.0 - gp.omega2 * math.log(math.log(EE)) ** 2 / math.log(EE)


def test_growth_bound_dominates_zeta_on_the_1_line():
    gp = GrowthParams.from_table_row(T.growth_row("500"), CTX)
    bound = growth_bound(1e6, gp, CTX)
    ctx = PrecisionContext(64)
    z = abs(zeta_complex(complex(1.0, 1e6), ctx))
    assert z.hi() < bound.lo()


def test_k_chain_invariant_sampled():
    for row in T.GROWTH_ROWS:
        ts = np.exp(np.linspace(math.log(row.t0 * 1.001),
                                math.log(row.t0 * 1e4), 200))
        for t in ts:
            k = F.k_of_t(float(t), row.omega1)
            lt, llt = math.log(t), math.log(math.log(t))
            assert k >= 3
            assert k / (2 ** k - 2) >= row.omega2 * llt * llt / lt
            assert 1.0 / (2 ** k - 2) <= 8 * llt / (3 * row.omega1 * lt)


def test_wide_strip_bound_beats_prior_constants():
    # 2.5 (log t)^1.91 <= 76.2 (log t)^3.29 whenever log t >= e
    for t in np.exp(np.linspace(math.e, 40, 50)):
        assert 2.5 * math.log(t) ** 1.91 <= 76.2 * math.log(t) ** 3.29


# ---------------------------------------------------------------------------
# strip and reciprocal constants
# ---------------------------------------------------------------------------

def test_z_const_reference_rows():
    for key, sigma1, printed in T.Z_ROWS:
        val = float(Z_const(sigma1, T.resolve_t0(key), CTX).mid)
        assert val == pytest.approx(printed, rel=5e-3)


def test_v1_decreasing_in_d():
    vals = [float(V1(d, 6.52, EE, CTX).mid) for d in np.linspace(0.002, 0.05, 12)]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_v2_applicability_and_comparison():
    # 1 + 0.04/e = 1.0147... <= (1+gamma)/gamma = 2.7322...
    with mp.workprec(120):
        cap = float((1 + mpmath.euler) / mpmath.euler)
    assert 1 + 0.04 / math.e <= cap
    assert F.v2_applicable(0.04, 6.0, EE, CTX)
    for d in np.linspace(0.003, 0.05, 8):
        v1 = V1(d, 6.52, EE, CTX)
        v2 = V2(d, 6.52, EE, CTX)
        assert v2.surely_le(v1)
    with pytest.raises(ConstraintError):
        V2(0.5, 1.05, EE, CTX)   # shifted abscissa exceeds sigma1


def test_v2_feeds_recip_budget_row():
    val = float(V2(0.0032, 6.64, EE, CTX).mid)
    # closed-form hand evaluation of the same expression
    with mp.workprec(200):
        g = mpmath.euler
        t0 = mpmath.exp(mpmath.e)
        head = ((1 / mpmath.mpf("0.0032"))
                * mpmath.exp(g * mpmath.mpf("0.0032") / mpmath.e)) ** mpmath.mpf("0.75")
        z2 = (mpmath.mpf("1.731") * mpmath.zeta(mpmath.mpf("6.64"))
              * (1 + 3 / (2 * t0)) * mpmath.log(2 * t0 + mpmath.mpf("6.64") + 2)
              / mpmath.log(2 * t0))
        tail = (z2 * (1 + mpmath.log(2) / mpmath.log(t0))) ** mpmath.mpf("0.25")
        expected = float(head * tail)
    assert val == pytest.approx(expected, rel=1e-12)


def test_c1_anchor_and_bounds():
    # verified-height replacement bound: (C1 - 0.05)/2 >= 0.121...
    c1 = C1(1.0, EE, 0.309)
    assert (c1 - 0.05) / 2 >= 0.121
    assert (c1 - 0.05) / 2 == pytest.approx(0.1217, abs=2e-4)
    for eps in (0.1, 0.5, 1.0):
        for tp in (EE, 50.0, 1e4):
            assert C1(eps, tp, 0.309) <= 0.309
    # C1 -> omega2 as eps -> 0
    assert C1(1e-9, 100.0, 0.386) == pytest.approx(0.386, rel=1e-6)


def test_c1_domain_error():
    with pytest.raises(DomainError):
        C1(1.0, 3.5, 0.309)   # t' - eps <= e


def test_radius_r_properties():
    te = math.exp(math.e ** 2)
    # (loglog t)^2/log t peaks at t = e^(e^2) with value 4/e^2
    peak = math.log(math.log(te)) ** 2 / math.log(te)
    assert peak == pytest.approx(4 / math.e ** 2, rel=1e-12)
    for t in (te / 2, te * 2, 50.0, 1e6):
        assert math.log(math.log(t)) ** 2 / math.log(t) <= peak + 1e-15
    # identity r = C1 (loglog)^2/log + delta
    c1v, d, tp = 0.3, 0.04, 1e3
    lt, llt = math.log(tp), math.log(math.log(tp))
    assert radius_r(tp, d, c1v) == pytest.approx(
        c1v * llt * llt / lt + d * llt / lt, rel=1e-14)
    # monotone decay toward 0 beyond the peak
    tail = [radius_r(t, d, c1v) for t in (1e30, 1e100, 1e280)]
    assert tail[0] > tail[1] > tail[2]
    assert tail[2] < 0.05


def test_c1_const_properties():
    assert c1_const(1.0, EE, 1 / 21.233) < 1 / 21.233
    assert c1_const(1e-12, 500.0, 0.05) == pytest.approx(0.05, rel=1e-9)
    expected = (1 / 12) * math.e / math.log(EE + 1)
    assert c1_const(1.0, EE, 1 / 12) == pytest.approx(expected, rel=1e-12)


def test_alpha_fn_properties():
    vals = [alpha_fn(0.04, 0.047, 0.941, tp) for tp in (EE, 1e3, 1e9, H)]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    # published upper bounds on alpha at the unconditional regime's t0
    row = T.r1_row(22.0)
    c1 = c1_const(row.eps, H, T.C0_ZERO_FREE)
    alpha = alpha_fn(row.d, c1, C1(row.eps, H, 0.941), H)
    assert alpha <= row.alpha1 * 1.005
    k1h = T.k1_row("H")
    c1 = c1_const(k1h.eps, H, T.C0_ZERO_FREE)
    alpha = alpha_fn(k1h.d, c1, C1(k1h.eps, H, 0.941), H)
    assert alpha <= k1h.alpha1 * 1.005


def test_a3_limits_and_monotonicity():
    gp = GrowthParams.from_table_row(T.growth_row("ee"), CTX)
    a3_far, _ = A3_and_Amax(1e15, 0.5, gp, CTX)
    assert float(a3_far.mid) == pytest.approx(float(gp.a_kappa_value.mid), rel=1e-10)
    vals = []
    for tp in (EE, 30.0, 100.0, 1e4, 1e8):
        a3, _ = A3_and_Amax(tp, 0.5, gp, CTX)
        vals.append(float(a3.mid))
    assert all(a >= b for a, b in zip(vals, vals[1:]))


# ---------------------------------------------------------------------------
# Q1 certificates
# ---------------------------------------------------------------------------

def _high_params(row: T.R1Row) -> MainLemmaParams:
    gp = GrowthParams.from_table_row(T.growth_row("H"), CTX)
    return MainLemmaParams(t0=H, W=row.W, d=row.d, epsilon=row.eps,
                           sigma1=row.sigma1, zero_free_c=T.C0_ZERO_FREE,
                           growth=gp, beta=row.beta)


@pytest.mark.parametrize("W", [22.0, 70.0])
def test_q1_reference_rows(W):
    row = T.r1_row(W)
    cert = Q1(_high_params(row), CTX)
    assert cert.valid
    assert cert.computed == pytest.approx(row.R1, rel=5e-3)


def test_q1_blows_up_as_beta_tends_to_1():
    row = T.r1_row(22.0)
    gp = GrowthParams.from_table_row(T.growth_row("H"), CTX)
    vals = []
    for beta in (0.985, 0.993, 0.999, 0.99995):
        p = MainLemmaParams(t0=H, W=row.W, d=row.d, epsilon=row.eps,
                            sigma1=row.sigma1, zero_free_c=T.C0_ZERO_FREE,
                            growth=gp, beta=beta)
        vals.append(Q1(p, CTX).computed)
    assert all(b > a for a, b in zip(vals, vals[1:]))


def test_q1_monotone_in_a_kappa_and_v():
    row = T.r1_row(22.0)
    base = Q1(_high_params(row), CTX)
    gp = GrowthParams.from_table_row(T.growth_row("H"), CTX)
    inflated = GrowthParams(gp.t0, gp.kappa, gp.omega1, gp.omega2,
                            gp.a_kappa_value * 2, gp.B, gp.source_key,
                            gp.printed, gp.omega1_exact_8e)
    p2 = MainLemmaParams(t0=H, W=row.W, d=row.d, epsilon=row.eps,
                         sigma1=row.sigma1, zero_free_c=T.C0_ZERO_FREE,
                         growth=inflated, beta=row.beta)
    assert Q1(p2, CTX).computed > base.computed
    # larger V never decreases the V-branch
    for scale in (1.0, 1.5, 4.0, 16.0):
        prev = None
        lam1 = base.extras["lambda1"]
        lam2 = base.extras["lambda2"]
        amax = base.extras["A_max"]
        LL0 = math.log(math.log(H))
        v = 14.0 * scale
        branch = lam1 * (T.growth_row("H").B + 1
                         + math.log(amax * v) / LL0) + lam2
        if prev is not None:
            assert branch >= prev
        prev = branch


def test_q1_invalid_constraints_flag_the_culprit():
    gp = GrowthParams.from_table_row(T.growth_row("ee"), CTX)
    # replacement zero-free constant above the 1/8.22 cap
    p = MainLemmaParams(t0=EE, W=22.0, d=0.049, epsilon=0.9, sigma1=8.0,
                        zero_free_c=0.2, growth=gp, beta=None)
    cert = Q1(p, CTX)
    assert not cert.valid and cert.value is None
    assert "c_rh_admissible" in cert.failing()
    # epsilon below its floor d/e + (C1 + d) 4/e^2
    p = MainLemmaParams(t0=EE, W=22.0, d=0.049, epsilon=0.05, sigma1=8.0,
                        zero_free_c=0.12, growth=gp, beta=None)
    cert = Q1(p, CTX)
    assert not cert.valid
    assert "eps_cond" in cert.failing()


def test_q1_two_regime_reference_rows():
    for W, printed in ((21.24, 586798), (22.0, 5471)):
        row = T.r1_row(W)
        gp_low = GrowthParams.from_table_row(T.growth_row("ee"), CTX)
        p_low = MainLemmaParams(t0=EE, W=W, d=0.03, epsilon=0.6, sigma1=8.0,
                                zero_free_c=1.0 / 12.0, growth=gp_low, beta=None)
        cert = Q1_two_regime(W, EE, p_low, _high_params(row), CTX)
        assert cert.valid
        assert cert.computed == pytest.approx(printed, rel=5e-3)
        # the verified-height regime must not bind at these rows
        assert cert.extras["low"]["value"] <= cert.extras["high"]["value"]


def test_constraint_closure_recheck():
    """Independent float re-check of every constraint behind a valid
    certificate."""
    row = T.r1_row(22.0)
    cert = Q1(_high_params(row), CTX)
    assert cert.valid
    d, eps, s1 = row.d, row.eps, row.sigma1
    c1 = c1_const(eps, H, T.C0_ZERO_FREE)
    C1v = C1(eps, H, 0.941)
    LL0 = math.log(math.log(H))
    L0 = math.log(H)
    assert d / math.e + (C1v + d) * 4 / math.e ** 2 <= eps <= 1
    assert alpha_fn(d, c1, C1v, H) < 0.5
    beta_floor = (d + 1 / row.W) / (d + c1)
    assert beta_floor <= cert.extras["beta_effective"] < 1
    w_cons = 1.0 / (cert.extras["beta_effective"] * c1 - d
                    * (1 - cert.extras["beta_effective"]))
    assert w_cons > 21.233
    assert T.growth_row("H").kappa >= 4 / math.e ** 2 * (0.941 + 2 * d / LL0)
    assert s1 >= 1 + d * LL0 / L0


# ---------------------------------------------------------------------------
# K1 / Q2 / K2
# ---------------------------------------------------------------------------

def test_k1_reference_rows():
    for key in ("ee", "500", "H"):
        row = T.k1_row(key)
        gp = GrowthParams.from_table_row(tables_row_for(row.t0), CTX)
        if key == "H":
            p = MainLemmaParams(t0=row.t0, W=math.inf, d=row.d, epsilon=row.eps,
                                sigma1=row.sigma1, zero_free_c=T.C0_ZERO_FREE,
                                growth=gp)
        else:
            p = MainLemmaParams(t0=row.t0, W=math.inf, d=row.d, epsilon=row.eps,
                                sigma1=row.sigma1, zero_free_c=1.0 / row.inv_c_rh,
                                growth=gp)
        cert = K1(p, CTX)
        assert cert.valid
        assert cert.computed == pytest.approx(row.K1, rel=5e-3)


def tables_row_for(t0: float):
    return T.pick_growth_row(t0)


def test_q2_reference_rows():
    sched = WSchedule.from_reference(21.24, EE)
    cert = Q2(0.0031, 6.52, EE, sched, 238.4, CTX)
    assert cert.computed == pytest.approx(44910, rel=5e-3)
    sched = WSchedule.from_reference(22.0, 500.0)
    cert = Q2(0.0067, 12.35, 500.0, sched, 113.3, CTX)
    assert cert.computed == pytest.approx(3438, rel=5e-3)


def test_q2_single_entry_schedule_reduction():
    sched = WSchedule(((24.0, 1599.0, 18.0),), 18.0)
    factor = float(sched.factor_ball(CTX).mid)
    assert factor == pytest.approx(1599.0 / 24.0, rel=1e-14)
    # as-stated exponential variant reduces to exp(R1/W + d1 K1)
    cert = Q2(0.0031, 7.14, 18.0, sched, 238.4, CTX,
              exponentiated_schedule=True)
    v_used = min(float(V1(0.0031, 7.14, 18.0, CTX).mid),
                 float(V2(0.0031, 7.14, 18.0, CTX).mid))
    expected = v_used * math.exp(1599.0 / 24.0 + 0.0031 * 238.4)
    assert cert.computed == pytest.approx(expected, rel=1e-9)


def test_q2_errors():
    with pytest.raises(DomainError):
        WSchedule((), 500.0)
    with pytest.raises(DomainError):
        WSchedule(((22.0, 5471.0, EE), (21.5, 9000.0, EE)), EE)
    sched = WSchedule.from_reference(22.0, 500.0)
    with pytest.raises(ConstraintError):
        Q2(0.0067, 1.0000001, 500.0, sched, 113.3, CTX)


def test_k2_reference_rows():
    for key in ("ee", "500", "H"):
        row = T.k2_row(key)
        cert = K2(row.d1, row.sigma1, row.t0, T.k1_row(key).K1, CTX)
        assert cert.computed == pytest.approx(row.K2, rel=5e-3)


def test_k2_requires_v2_applicability():
    with pytest.raises(ConstraintError):
        K2(0.9, 1.01, 500.0, 113.3, CTX)
