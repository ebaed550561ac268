"""Numerical certification of the inequality checks behind the bound chain.

Region checks close small-|t| inequalities with ball evaluation on an
adaptive grid: a cell is certified when the center ball plus a rigorous
cell Lipschitz bound clears the target, bisected otherwise, and declared
inconclusive past the depth cap.  The entire function (s-1) zeta(s) is
bounded through its Euler-Maclaurin form, which keeps every estimate
finite across the pole at s = 1.

Cosine-polynomial nonnegativity uses dense sampling with a second-order
between-sample bound; minima that touch zero (the interesting case) are
reported to tolerance rather than strictly certified.

Spot checks sample certificate regions and compare ball evaluations of
|zeta'/zeta| or |1/zeta| against the certified constant; any violation is
a hard failure with a witness, since the certified bounds are theorems.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np
import mpmath

from .balls import BallValue, PrecisionContext
from .zeta import zeta_complex, zeta_and_prime
from .formulas import BoundCertificate
from . import kernels, tables

__all__ = [
    "RegionCheck",
    "TrigPoly",
    "TrigReport",
    "SpotReport",
    "check_lemma5_small_t",
    "check_lemma5_large_t",
    "check_lemma8_small_t",
    "check_corollary4_range",
    "trig_criteria",
    "trig_search",
    "spot_check",
]

_PAD = 1.0 + 1e-9


@dataclass
class RegionCheck:
    description: str
    region: tuple
    lhs: str
    rhs: str
    margin: float
    outcome: str = "inconclusive"        # certified | failed | inconclusive
    witness: Optional[tuple] = None
    cells: int = 0
    max_depth_used: int = 0
    worst_gap: float = -math.inf         # sup of (lhs - rhs - margin) bound
    notes: tuple = ()

    def as_record(self) -> dict:
        return {
            "kind": "region_check",
            "description": self.description,
            "region": self.region,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "outcome": self.outcome,
            "witness": self.witness,
            "cells": self.cells,
            "max_depth_used": self.max_depth_used,
            "worst_gap": self.worst_gap,
            "notes": list(self.notes),
        }


# ---------------------------------------------------------------------------
# rigorous sup bounds for h(s) = (s-1) zeta(s) and h'(s) over a box
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _bern_fact(k: int) -> float:
    with mpmath.mp.workprec(80):
        return float(abs(mpmath.bernoulli(2 * k)) / mpmath.factorial(2 * k))


def _box_remainders(sig_lo: float, t_hi: float, N: int, M: int)\
        -> tuple[float, float, float]:
    """Sups of the Euler-Maclaurin remainder and its first two
    s-derivatives over the box sigma >= sig_lo > 0, |t| <= t_hi."""
    if sig_lo <= 0.0:
        raise ValueError("box must have positive sigma")
    a = sig_lo + 2.0 * M
    logprod = 0.0
    suminv = 0.0
    suminv2 = 0.0
    for j in range(2 * M + 1):
        logprod += math.log(math.hypot(sig_lo + j, t_hi))
        suminv += 1.0 / (sig_lo + j)
        suminv2 += 1.0 / (sig_lo + j) ** 2
    logN = math.log(N)
    base = math.exp(min(math.log(2.5) + logprod - a * logN
                        - (2 * M + 1) * math.log(2 * math.pi), 700.0))
    i0 = 1.0 / a
    i1 = logN / a + 1.0 / (a * a)
    i2 = logN * logN / a + 2.0 * logN / (a * a) + 2.0 / (a ** 3)
    r0 = base * i0
    r1 = base * (suminv * i0 + i1)
    r2 = base * ((suminv * suminv + suminv2) * i0 + 2.0 * suminv * i1 + i2)
    return r0 * _PAD, r1 * _PAD, r2 * _PAD


def _h_sups(sig_lo: float, sig_hi: float, t_hi: float,
            N: int = 16, M: int = 8) -> tuple[float, float, float]:
    """Upper bounds for sup |h|, sup |h'|, sup |h''| of h = (s-1) zeta(s)
    on the box [sig_lo, sig_hi] x [-t_hi, t_hi]; finite across the pole."""
    if sig_lo <= 0.0:
        raise ValueError("box must have positive sigma")
    d1 = math.hypot(max(abs(sig_lo - 1.0), abs(sig_hi - 1.0)), t_hi)
    A = sum(n ** -sig_lo for n in range(1, N))
    A1 = sum(math.log(n) * n ** -sig_lo for n in range(2, N))
    A2 = sum(math.log(n) ** 2 * n ** -sig_lo for n in range(2, N))
    logN = math.log(N)
    pow1 = N ** (1.0 - sig_lo)
    pow0 = N ** (-sig_lo)
    T = Tp = Tpp = 0.0
    prod = 1.0
    sinv = sinv2 = 0.0
    for k in range(1, M + 1):
        if k == 1:
            prod = math.hypot(sig_hi, t_hi)
            sinv = 1.0 / sig_lo
            sinv2 = 1.0 / sig_lo ** 2
        else:
            prod *= math.hypot(sig_hi + 2 * k - 3, t_hi) \
                * math.hypot(sig_hi + 2 * k - 2, t_hi)
            sinv += 1.0 / (sig_lo + 2 * k - 3) + 1.0 / (sig_lo + 2 * k - 2)
            sinv2 += 1.0 / (sig_lo + 2 * k - 3) ** 2 + 1.0 / (sig_lo + 2 * k - 2) ** 2
        tk = _bern_fact(k) * prod * N ** (-sig_lo - 2 * k + 1)
        T += tk
        Tp += tk * (sinv + logN)
        Tpp += tk * ((sinv + logN) ** 2 + sinv2)
    R, Rp, Rpp = _box_remainders(sig_lo, t_hi, N, M)
    sup_h = d1 * (A + pow0 / 2 + T + R) + pow1
    sup_hp = (A + d1 * A1 + logN * pow1 + pow0 / 2 + d1 * logN * pow0 / 2
              + T + d1 * Tp + R + d1 * Rp)
    sup_hpp = (2.0 * A1 + d1 * A2 + logN * logN * pow1 + logN * pow0
               + d1 * logN * logN * pow0 / 2
               + 2.0 * Tp + d1 * Tpp + 2.0 * Rp + d1 * Rpp)
    return sup_h * _PAD, sup_hp * _PAD, sup_hpp * _PAD


def _h_ball(sigma: float, t: float, ctx: PrecisionContext) -> BallValue:
    """Ball for |(s-1) zeta(s)| at a point (finite at s -> 1 limits are
    never requested; centers always have t > 0 or sigma != 1)."""
    s = complex(sigma, t)
    z = zeta_complex(s, ctx)
    sm1 = BallValue(mpmath.mpc(sigma - 1.0, t), 0.0, ctx.precision_bits)
    return abs(sm1 * z)


def _h_and_deriv_ball(sigma: float, t: float,
                      ctx: PrecisionContext) -> tuple[BallValue, BallValue]:
    """Balls for |h| and |h'| at a point, h = (s-1) zeta(s),
    h' = zeta(s) + (s-1) zeta'(s)."""
    s = complex(sigma, t)
    z, zp = zeta_and_prime(s, ctx)
    sm1 = BallValue(mpmath.mpc(sigma - 1.0, t), 0.0, ctx.precision_bits)
    return abs(sm1 * z), abs(z + sm1 * zp)


# ---------------------------------------------------------------------------
# growth-bound small-|t| check
# ---------------------------------------------------------------------------

def check_lemma5_small_t(ctx: Optional[PrecisionContext] = None,
                         max_depth: int = 48,
                         margin: float = -0.21) -> RegionCheck:
    """Certify  sup_{1/2<=sigma<=1, |t|<=3} (|(s-1)zeta(s)|
    - 1.546 |s+1| log|s+1|) < margin, plus the sigma = 1+kappa side
    condition |(s-1)zeta(s)| <= zeta(1+kappa)|s+1| for each growth row.

    Certifying on the closed sigma interval [1/2, 1] covers the stated
    half-open one; only t >= 0 is scanned (conjugation symmetry).
    """
    ctx = ctx or PrecisionContext(64)
    check = RegionCheck(
        description="wide-strip growth bound, small |t|",
        region=((0.5, 1.0), (0.0, 3.0)),
        lhs="|(s-1)zeta(s)|",
        rhs=f"1.546|s+1|log|s+1| {margin:+}",
        margin=margin,
        notes=("t>=0 suffices by conjugation symmetry",),
    )
    stack = [(0.5, 1.0, 0.0, 3.0, 0)]
    worst = -math.inf
    while stack:
        sig_lo, sig_hi, t_lo, t_hi, depth = stack.pop()
        check.cells += 1
        check.max_depth_used = max(check.max_depth_used, depth)
        sc, tc = (sig_lo + sig_hi) / 2.0, (t_lo + t_hi) / 2.0
        rho = math.hypot(sig_hi - sig_lo, t_hi - t_lo) / 2.0
        x_lo = math.hypot(sig_lo + 1.0, t_lo)
        x_hi = math.hypot(sig_hi + 1.0, t_hi)
        xc = math.hypot(sc + 1.0, tc)
        hb, hpb = _h_and_deriv_ball(sc, tc, ctx)
        _, sup_hp, sup_hpp = _h_sups(sig_lo, sig_hi, t_hi)
        # first-order bound: center ball + cell Lipschitz, corner rhs
        lip = sup_hp + 1.546 * (math.log(x_hi) + 1.0)
        rhs_min = 1.546 * x_lo * math.log(x_lo) / _PAD
        f_sup1 = hb.hi() + lip * rho - rhs_min
        # second-order bound: center value and gradient, cell curvature
        f_center = hb.hi() - 1.546 * xc * math.log(xc) / _PAD
        grad = hpb.hi() + 1.546 * (math.log(xc) + 1.0) * _PAD
        curv = sup_hpp + 1.546 * (math.log(x_hi) + 2.0) / x_lo
        f_sup2 = f_center + grad * rho + curv * rho * rho / 2.0
        f_sup = min(f_sup1, f_sup2)
        if f_sup < margin:
            worst = max(worst, f_sup - margin)
            continue
        # failure probe at the center
        f_center_lo = hb.lo() - 1.546 * xc * math.log(xc) * _PAD
        if f_center_lo >= margin:
            check.outcome = "failed"
            check.witness = (sc, tc, f_center_lo)
            check.worst_gap = f_center_lo - margin
            return check
        if depth >= max_depth:
            check.outcome = "inconclusive"
            check.witness = (sc, tc, f_sup)
            check.worst_gap = f_sup - margin
            return check
        if (sig_hi - sig_lo) >= (t_hi - t_lo):
            sm = (sig_lo + sig_hi) / 2.0
            stack.append((sig_lo, sm, t_lo, t_hi, depth + 1))
            stack.append((sm, sig_hi, t_lo, t_hi, depth + 1))
        else:
            tm = (t_lo + t_hi) / 2.0
            stack.append((sig_lo, sig_hi, t_lo, tm, depth + 1))
            stack.append((sig_lo, sig_hi, tm, t_hi, depth + 1))
    check.worst_gap = worst

    # side condition on the right edge sigma = 1 + kappa of each growth row
    notes = list(check.notes)
    for row in tables.GROWTH_ROWS:
        sigma = 1.0 + row.kappa
        z_lo, _, _ = _real_zeta_bounds(sigma, ctx.precision_bits)
        ok = _certify_segment(
            lambda t, s=sigma: _h_ball(s, t, ctx).hi(),
            lambda tlo, thi, s=sigma: _line_lip(s, thi, ctx),
            lambda tlo, thi, s=sigma, z=z_lo: z * math.hypot(s + 1.0, tlo) / _PAD,
            0.0, 3.0, max_depth=24,
        )
        notes.append(f"sigma=1+{row.kappa}: zeta-side condition "
                     f"{'certified' if ok else 'NOT certified'}")
        if not ok:
            check.outcome = "inconclusive"
            check.notes = tuple(notes)
            return check
    check.notes = tuple(notes)
    check.outcome = "certified"
    return check


@lru_cache(maxsize=64)
def _real_zeta_bounds(sigma: float, prec: int) -> tuple[float, float, float]:
    """(lower bound of zeta(sigma), upper bound of zeta(sigma),
    upper bound of |zeta'(sigma)|) for real sigma > 1."""
    ctx = PrecisionContext(prec)
    z, zp = zeta_and_prime(sigma, ctx)
    return z.lo(), z.hi(), abs(zp).hi()


def _line_lip(sigma: float, t_hi: float, ctx: PrecisionContext) -> float:
    """Lipschitz bound for t -> |(s-1)zeta(s)| on a sigma > 1 line; on the
    line |zeta(sigma+it)| <= zeta(sigma) and |zeta'(sigma+it)| <= |zeta'(sigma)|
    by term-wise domination."""
    _, z_hi, zp_hi = _real_zeta_bounds(sigma, ctx.precision_bits)
    return (z_hi + math.hypot(sigma - 1.0, t_hi) * zp_hi) * _PAD


def _certify_segment(lhs_hi, lip_of, rhs_lo, t_lo, t_hi, max_depth=24) -> bool:
    """Generic 1-D certification of lhs(t) < rhs(t) on [t_lo, t_hi]."""
    stack = [(t_lo, t_hi, 0)]
    while stack:
        a, b, depth = stack.pop()
        c = (a + b) / 2.0
        if lhs_hi(c) + lip_of(a, b) * (b - a) / 2.0 < rhs_lo(a, b):
            continue
        if depth >= max_depth:
            return False
        stack.append((a, c, depth + 1))
        stack.append((c, b, depth + 1))
    return True


# ---------------------------------------------------------------------------
# growth-bound |t| >= 3 sampled check
# ---------------------------------------------------------------------------

def check_lemma5_large_t(ctx: Optional[PrecisionContext] = None,
                         samples: int = 200) -> RegionCheck:
    """Sampled verification of
    |s-1| t^(1/(2^k-2)) log t <= |s+1|^(1+1/(2^k-2)) log|s+1|
    at sigma = 1 - k/(2^k-2), t in [3, 1e6] log-spaced, k = 3..40."""
    check = RegionCheck(
        description="wide-strip growth bound, |t| >= 3 (sampled)",
        region=((0.5, 1.0), (3.0, 1e6)),
        lhs="|s-1| t^e_k log t",
        rhs="|s+1|^(1+e_k) log|s+1|",
        margin=0.0,
        notes=("sampled, not adaptively certified",),
    )
    ts = np.exp(np.linspace(math.log(3.0), math.log(1e6), samples))
    min_slack = math.inf
    slack_by_k = {}
    for k in range(3, 41):
        ek = 1.0 / (2.0 ** k - 2.0)
        sk = 1.0 - k / (2.0 ** k - 2.0)
        prev = -math.inf
        monotone = True
        for t in ts:
            lhs = math.hypot(sk - 1.0, t) * t ** ek * math.log(t)
            sp1 = math.hypot(sk + 1.0, t)
            rhs = sp1 ** (1.0 + ek) * math.log(sp1)
            slack = rhs - lhs
            check.cells += 1
            if slack < min_slack:
                min_slack = slack
            if slack <= 0.0:
                check.outcome = "failed"
                check.witness = (sk, float(t), slack)
                return check
            if slack < prev:
                monotone = False
            prev = slack
        slack_by_k[k] = monotone
    check.worst_gap = -min_slack
    check.outcome = "certified"
    check.notes = check.notes + (
        f"min slack {min_slack:.4g}",
        f"slack monotone increasing in t for {sum(slack_by_k.values())}/38 of k",
    )
    return check


# ---------------------------------------------------------------------------
# strip-bound small-|t| check
# ---------------------------------------------------------------------------

def _g2(x: float) -> float:
    return x * math.log(x) / math.log(math.log(x))


def _g2_min(x_lo: float, x_hi: float) -> float:
    """Lower bound for min of x log x/loglog x on [x_lo, x_hi], x_lo > e.
    The function is unimodal with an interior minimum near 4.39."""
    cands = [_g2(x_lo), _g2(x_hi)]
    if x_lo < 4.6 and x_hi > 4.2:
        a, b = max(x_lo, 4.2), min(x_hi, 4.6)
        xs = np.linspace(a, b, 64)
        h = (b - a) / 63 if b > a else 0.0
        cands.append(min(_g2(float(x)) for x in xs) - 1.0 * h / 2.0)
    return min(cands) / _PAD


def check_lemma8_small_t(ctx: Optional[PrecisionContext] = None,
                         t_direct: float = 5.0) -> RegionCheck:
    """Certify |(s-1)zeta(s)| <= 1.731 |s+2| log|s+2|/loglog|s+2| on
    sigma = 1 directly for 0 <= t <= t_direct, reduce t >= t_direct to the
    1-line bound via monotonicity, and certify the sigma = sigma1 side
    condition |(s-1)zeta(s)| <= zeta(sigma1)|s+2| for each strip row.

    |s+2| >= 3 > e on the whole segment, so the right side is defined and
    positive everywhere (no excluded sub-region).  The displayed t >= 3
    reduction through t log t/loglog t is only monotone from about 4.39
    on, hence the direct certification up to t_direct > 4.6.
    """
    ctx = ctx or PrecisionContext(64)
    check = RegionCheck(
        description="1-line strip bound, small |t|",
        region=((1.0, 1.0), (0.0, t_direct)),
        lhs="|(s-1)zeta(s)|",
        rhs="1.731|s+2|log|s+2|/loglog|s+2|",
        margin=0.0,
        notes=(
            "|s+2| >= 3 > e on sigma = 1: inequality well-defined on the full segment",
            "y log y/loglog y decreasing below ~4.39: direct check extended to "
            f"t <= {t_direct} before the monotone reduction applies",
        ),
    )

    def lhs_hi(t):
        return _h_ball(1.0, t, ctx).hi()

    def lip(a, b):
        _, sup_hp, _ = _h_sups(1.0, 1.0, b)
        x_lo = math.hypot(3.0, a)
        lg = (math.log(x_lo) + 1.0) / math.log(math.log(x_lo)) \
            + 1.0 / math.log(math.log(x_lo)) ** 2
        return (sup_hp + 1.731 * lg) * _PAD

    def rhs_lo(a, b):
        return 1.731 * _g2_min(math.hypot(3.0, a), math.hypot(3.0, b))

    ok = _certify_segment(lhs_hi, lip, rhs_lo, 0.0, t_direct, max_depth=30)
    if not ok:
        check.outcome = "inconclusive"
        return check

    # monotone reduction for t >= t_direct: (log y + 1) loglog y > 1 from
    # y = 4.6 on and increasing, so phi(y) = y log y/loglog y increases;
    # then |h| <= 1.731 t log t/loglog t = 1.731 phi(t) <= 1.731 phi(|s+2|).
    y = 4.6
    if not (math.log(y) + 1.0) * math.log(math.log(y)) > 1.0 * _PAD:
        check.outcome = "inconclusive"
        return check

    notes = list(check.notes)
    notes.append("t >= %.1f: reduction via phi increasing on [4.6, inf)" % t_direct)

    # side condition at sigma = sigma1 for each strip row, |t| <= 3;
    # for |t| >= 3 it is exact: |s-1| <= |s+2| for sigma > -1/2 and
    # |zeta| <= zeta(sigma1).
    for key, sigma1, _ in tables.Z_ROWS:
        z_lo, z_hi, _ = _real_zeta_bounds(sigma1, ctx.precision_bits)
        ok = _certify_segment(
            lambda t, s1=sigma1: _h_ball(s1, t, ctx).hi(),
            lambda a, b, s1=sigma1, z=z_hi: _line_lip(s1, b, ctx) + z,
            lambda a, b, s1=sigma1, z=z_lo: z * math.hypot(s1 + 2.0, a) / _PAD,
            0.0, 3.0, max_depth=24,
        )
        notes.append(f"sigma1={sigma1}: side condition "
                     f"{'certified' if ok else 'NOT certified'}")
        if not ok:
            check.outcome = "inconclusive"
            check.notes = tuple(notes)
            return check
    notes.append("|t| >= 3 side condition exact: |s-1| <= |s+2| and |zeta| <= zeta(sigma1)")
    check.notes = tuple(notes)
    check.outcome = "certified"
    return check


# ---------------------------------------------------------------------------
# small-t extension check for the sigma >= 1 reciprocal bound
# ---------------------------------------------------------------------------

def check_corollary4_range(ctx: Optional[PrecisionContext] = None) -> RegionCheck:
    """Certify K2(500) log t/loglog t >= 2.079 log t on 3 <= t <= 500,
    equivalently loglog t <= K2/2.079 there; loglog is increasing so the
    t = 500 endpoint decides."""
    ctx = ctx or PrecisionContext(64)
    k2 = tables.k2_row("500").K2
    cap = k2 / tables.SMALL_T_RECIP_COEFF
    end = ctx.exact(500).log().log()
    ok = end.surely_le(ctx.exact(cap) / _PAD)
    lo = ctx.exact(3).log().log()
    check = RegionCheck(
        description="small-t range extension for the sigma >= 1 reciprocal bound",
        region=((1.0, 1.0), (3.0, 500.0)),
        lhs="loglog t",
        rhs=f"{k2}/2.079",
        margin=0.0,
        outcome="certified" if ok and lo.surely_ge(0) else "failed",
        worst_gap=float(end.mid) - cap,
        notes=(
            "equivalent to K2 log t/loglog t >= 2.079 log t after dividing "
            "by 2.079 log t > 0",
            f"loglog 500 = {float(end.mid):.6f} <= {cap:.4f}",
            "loglog increasing: endpoint t = 500 decides the range",
        ),
    )
    return check


# ---------------------------------------------------------------------------
# cosine polynomial criteria
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TrigPoly:
    """Cosine polynomial a_0 + a_1 cos(theta) + ... + a_N cos(N theta)."""

    coefficients: tuple

    def __post_init__(self):
        if len(self.coefficients) < 2:
            raise ValueError("need degree at least 1")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1


@dataclass
class TrigReport:
    nonneg: bool
    certified_strict: bool
    min_value: float
    argmin: float
    reciprocal_style: bool
    zerofree_style: bool
    ratio: Optional[float]
    coeff_sum: float

    def as_record(self) -> dict:
        return {
            "kind": "trig_criteria",
            "nonneg": self.nonneg,
            "certified_strict": self.certified_strict,
            "min_value": self.min_value,
            "argmin": self.argmin,
            "reciprocal_style": self.reciprocal_style,
            "zerofree_style": self.zerofree_style,
            "ratio": self.ratio,
            "coeff_sum": self.coeff_sum,
        }


def _poly_and_deriv(coeffs: np.ndarray, thetas: np.ndarray):
    ns = np.arange(len(coeffs))
    vals = np.zeros_like(thetas)
    dvals = np.zeros_like(thetas)
    for n, a in enumerate(coeffs):
        vals = vals + a * np.cos(n * thetas)
        if n:
            dvals = dvals - a * n * np.sin(n * thetas)
    return vals, dvals


def trig_criteria(poly: TrigPoly, n_samples: int = 10000,
                  tol: float = 1e-12) -> TrigReport:
    """Nonnegativity (sampled with a second-order between-sample bound),
    the coefficient-sum criterion sum|a_n| <= 2 a_1, the zero-free-region
    style criterion (a_n >= 0, a_1 > a_0), and the ratio a_0/a_1."""
    a = np.asarray(poly.coefficients, dtype=np.float64)
    ns = np.arange(len(a))
    L2 = float(np.sum(ns * ns * np.abs(a)))

    thetas = np.linspace(0.0, 2.0 * np.pi, n_samples, endpoint=False)
    h = 2.0 * np.pi / n_samples
    vals, dvals = _poly_and_deriv(a, thetas)

    # strict certification where the quadratic bound clears zero
    uncertified = vals - np.abs(dvals) * (h / 2.0) - L2 * h * h / 8.0 < 0.0
    certified_strict = not uncertified.any()
    min_sample = float(vals.min())
    if not certified_strict:
        # refine uncertified windows; keep strictness only if all clear
        idx = np.nonzero(uncertified)[0]
        all_clear = True
        worst = min_sample
        for i in idx:
            lo, hi = thetas[i] - h / 2.0, thetas[i] + h / 2.0
            fine = np.linspace(lo, hi, 257)
            fv, fd = _poly_and_deriv(a, fine)
            fh = (hi - lo) / 256
            worst = min(worst, float(fv.min()))
            if (fv - np.abs(fd) * (fh / 2.0) - L2 * fh * fh / 8.0 < 0.0).any():
                all_clear = False
        certified_strict = all_clear
        min_sample = min(min_sample, worst)

    # locate the minimum accurately
    i0 = int(np.argmin(vals))
    center, width = float(thetas[i0]), h
    for _ in range(6):
        fine = np.linspace(center - width, center + width, 129)
        fv, _ = _poly_and_deriv(a, fine)
        j = int(np.argmin(fv))
        center, width = float(fine[j]), width / 32.0
    min_value = min(min_sample, float(fv.min()))
    nonneg = certified_strict or min_value >= -tol

    abs_sum = math.fsum(abs(c) for c in poly.coefficients)
    a1 = poly.coefficients[1]
    reciprocal = a1 > 0 and abs_sum <= 2.0 * a1
    zerofree = all(c >= 0 for c in poly.coefficients) and a1 > poly.coefficients[0]
    ratio = poly.coefficients[0] / a1 if a1 != 0 else None
    return TrigReport(nonneg, certified_strict, min_value, center,
                      reciprocal, zerofree, ratio, abs_sum)


def trig_search(degree: int, grid_resolution: float = 0.05,
                coeff_bound: float = 1.0, n_theta: int = 720,
                a0_values=None) -> list[TrigPoly]:
    """Exhaustive normalized grid search (a_1 = 1) for polynomials that are
    nonnegative, satisfy sum|a_n| <= 2 a_1, and have a_0/a_1 < 3/4.

    Survivors of the sampled kernel pass are re-examined with
    trig_criteria before being returned; the expected result is an empty
    list for every degree.
    """
    if degree < 2:
        raise ValueError("degree must be at least 2")
    rows = kernels.enumerate_search(degree, grid_resolution,
                                    coeff_bound=coeff_bound, n_theta=n_theta,
                                    a0_values=a0_values)
    out = []
    for row in rows:
        poly = TrigPoly(tuple(float(c) for c in row))
        rep = trig_criteria(poly)
        if rep.nonneg and rep.reciprocal_style and rep.ratio is not None \
                and rep.ratio < 0.75:
            out.append(poly)
    return out


# ---------------------------------------------------------------------------
# certificate spot checks
# ---------------------------------------------------------------------------

@dataclass
class SpotReport:
    cert_kind: str
    samples: int
    t_max: float
    max_ratio: float
    outcome: str
    witness: Optional[tuple] = None

    def as_record(self) -> dict:
        return {
            "kind": "spot_check",
            "cert_kind": self.cert_kind,
            "samples": self.samples,
            "t_max": self.t_max,
            "max_ratio": self.max_ratio,
            "outcome": self.outcome,
            "witness": self.witness,
        }


def spot_check(cert: BoundCertificate, samples: int, t_max: float,
               ctx: Optional[PrecisionContext] = None,
               seed: int = 20240809) -> SpotReport:
    """Sample the certificate's validity region (t <= t_max) and compare
    the ball-evaluated quantity against value * log t/loglog t.

    The certified bounds are proven, so any violation is a hard failure
    pointing at an implementation bug; the report carries the witness.
    """
    if not cert.valid:
        raise ValueError("spot_check requires a valid certificate")
    ctx = ctx or PrecisionContext(64)
    rng = np.random.default_rng(seed)
    t_lo = max(cert.t_low, 3.0)
    if t_max <= t_lo:
        raise ValueError("t_max below the certificate's validity range")
    W = cert.params.get("W", math.inf)
    bound_c = cert.value.lo()
    reciprocal = cert.kind in ("R2", "K2")
    max_ratio = 0.0
    worst = None
    for _ in range(samples):
        t = math.exp(rng.uniform(math.log(t_lo), math.log(t_max)))
        delta = math.log(math.log(t)) / math.log(t)
        sig_lo = 1.0 - delta / W if math.isfinite(W) else 1.0
        sigma = sig_lo + rng.uniform(0.0, 1.5)
        z, zp = zeta_and_prime(complex(sigma, t), ctx)
        if reciprocal:
            quantity = abs(1 / z)
        else:
            quantity = abs(zp / z)
        bound = bound_c / delta / _PAD
        ratio = quantity.hi() / bound
        if ratio > max_ratio:
            max_ratio = ratio
            worst = (sigma, t, quantity.hi(), bound)
    outcome = "passed" if max_ratio <= 1.0 else "failed"
    return SpotReport(cert.kind, samples, t_max, max_ratio, outcome,
                      worst if outcome == "failed" else None)
