"""Constructors for every explicit constant in the bound chain, from the
growth-region width omega2 through the final Q1/Q2 certificates.

All internal evaluation uses ball arithmetic; a constraint counts as
satisfied only when it holds for the entire ball.  The thin float-returning
wrappers (omega2, C1, radius_r, c1_const, alpha_fn) expose midpoints of the
same computations.

Certificate conventions:

  * R1/K1 certificates bound |zeta'/zeta|, R2/K2 bound |1/zeta|, each by
    value * log t / loglog t on the stated region.
  * A certificate is valid only if every named constraint holds ball-safely;
    an invalid certificate carries no value.
  * Two-regime certificates take the max of a verified-height regime
    (t0 <= t <= H, zero-free constant c_RH) and an unconditional regime
    (t >= H, c0 = 1/21.233).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .balls import (
    BallValue,
    PrecisionContext,
    DomainError,
    ConstraintError,
    HEIGHT_H,
    ball_max,
    ball_min,
)
from .zeta import zeta_real
from . import tables

__all__ = [
    "GrowthParams",
    "MainLemmaParams",
    "WSchedule",
    "BoundCertificate",
    "omega2",
    "omega2_ball",
    "a_kappa",
    "growth_bound",
    "Z_const",
    "V1",
    "V2",
    "C1",
    "C1_ball",
    "A3",
    "A3_and_Amax",
    "radius_r",
    "c1_const",
    "alpha_fn",
    "Q1",
    "Q1_two_regime",
    "K1",
    "Q2",
    "K2",
    "k_of_t",
    "sigma_k",
    "omega1_requirement",
]


# ---------------------------------------------------------------------------
# small ball helpers
# ---------------------------------------------------------------------------

def _log(x: BallValue) -> BallValue:
    return x.log()


def _loglog(x: BallValue) -> BallValue:
    return x.log().log()


def _ex(ctx: PrecisionContext, x) -> BallValue:
    return ctx.exact(x)


# Balls are immutable in use, so pure sub-evaluations keyed on float
# arguments can be shared across certificate evaluations.

@lru_cache(maxsize=8192)
def _zeta_real_cached(sigma: float, prec: int) -> BallValue:
    return zeta_real(sigma, PrecisionContext(prec))


# ---------------------------------------------------------------------------
# growth-region machinery
# ---------------------------------------------------------------------------

def omega1_requirement(t0, ctx: PrecisionContext) -> BallValue:
    """sup over t >= t0 of 8 loglog t/log t.

    The ratio peaks at t = e^e and decreases on either side, so the sup
    is 8/e for t0 <= e^e and the value at t0 afterwards.
    """
    t0b = _ex(ctx, t0)
    ee = ctx.e_to_e()
    if t0b.surely_le(ee):
        return _ex(ctx, 8) / ctx.e()
    return _ex(ctx, 8) * _loglog(t0b) / _log(t0b)


def omega2_ball(omega1, t0, ctx: PrecisionContext) -> BallValue:
    """Width coefficient of the growth region, two-case closed form."""
    w1 = _ex(ctx, omega1)
    if not w1.surely_gt(0):
        raise DomainError("omega1 must be positive")
    log2 = _ex(ctx, 2).log()
    inv_e = 1 / ctx.e()
    base = (_ex(ctx, 1) - inv_e)
    if w1.surely_ge(1):
        return base / (w1 * log2)
    t0b = _ex(ctx, t0)
    LL0 = _loglog(t0b)
    if not LL0.surely_gt(0):
        raise DomainError("omega1 < 1 requires loglog t0 > 0")
    return (base + w1.log() / LL0) / (w1 * log2)


def omega2(omega1: float, t0: float, ctx: Optional[PrecisionContext] = None) -> float:
    return float(omega2_ball(omega1, t0, ctx or PrecisionContext()))


@lru_cache(maxsize=1024)
def _a_kappa_cached(kappa: float, t0: float, prec: int) -> BallValue:
    ctx = PrecisionContext(prec)
    k = _ex(ctx, kappa)
    t0b = _ex(ctx, t0)
    z = _zeta_real_cached(1.0 + kappa, prec)
    f1 = (1 + (2 + k) / t0b) ** (_ex(ctx, 1) / 6)
    f2 = 1 + (2 + k) / (t0b * _log(t0b))
    f3 = 1 + 2 * (1 + k).sqrt() / t0b
    return _ex(ctx, "1.546") * z * f1 * f2 * f3


def a_kappa(kappa, t0, ctx: PrecisionContext) -> BallValue:
    """Leading constant of the growth bound, computed from its definition."""
    if not kappa > 0:
        raise DomainError("kappa must be positive")
    return _a_kappa_cached(float(kappa), float(t0), ctx.precision_bits)


@dataclass(frozen=True)
class GrowthParams:
    """Admissible parameter set (t0, kappa, omega1, omega2, A_kappa, B) for
    |zeta(s)| <= A_kappa log^B t on sigma >= 1 - omega2 (loglog t)^2/log t,
    sigma <= 1 + kappa, t >= t0."""

    t0: float
    kappa: float
    omega1: float
    omega2: float
    a_kappa_value: BallValue
    B: float
    source_key: str = ""
    printed: bool = True
    omega1_exact_8e: bool = False

    @classmethod
    def from_table_row(cls, row: tables.GrowthRow, ctx: PrecisionContext,
                       t0: Optional[float] = None) -> "GrowthParams":
        """Published row constants; usable at any t0 >= row.t0 (the printed
        A_kappa only shrinks as t0 grows, so it stays admissible)."""
        use_t0 = row.t0 if t0 is None else float(t0)
        if use_t0 < row.t0 * (1 - 1e-12):
            raise DomainError(f"row {row.t0_key} not valid below t0={row.t0}")
        return cls(use_t0, row.kappa, row.omega1, row.omega2,
                   BallValue.exact(row.a_kappa, ctx.precision_bits), row.B,
                   source_key=row.t0_key, printed=True,
                   omega1_exact_8e=row.omega1_exact_8e)

    @classmethod
    def computed(cls, kappa: float, omega1: float, t0: float,
                 ctx: PrecisionContext) -> "GrowthParams":
        """Full-precision constants from the definitions."""
        w2 = omega2_ball(omega1, t0, ctx)
        ak = a_kappa(kappa, t0, ctx)
        B = 1.0 + 8.0 / (3.0 * omega1)
        return cls(float(t0), kappa, omega1, float(w2.mid), ak, B,
                   source_key="computed", printed=False)

    def for_t0(self, t0: float) -> "GrowthParams":
        if t0 < self.t0 * (1 - 1e-12):
            raise DomainError("cannot lower t0 of a growth row")
        return GrowthParams(float(t0), self.kappa, self.omega1, self.omega2,
                            self.a_kappa_value, self.B, self.source_key,
                            self.printed)


def growth_bound(t, gp: GrowthParams, ctx: PrecisionContext) -> BallValue:
    """A_kappa * (log t)^B; the caller asserts sigma lies in the strip."""
    if float(t) < gp.t0 * (1 - 1e-12):
        raise DomainError(f"t={t} below the row's t0={gp.t0}")
    tb = _ex(ctx, t)
    return gp.a_kappa_value * _log(tb) ** _ex(ctx, gp.B)


def k_of_t(t: float, omega1: float) -> int:
    """Dyadic index floor(log2(omega1 log t/loglog t)) used in the
    growth-bound proof chain."""
    lt = math.log(t)
    llt = math.log(lt)
    return int(math.floor(math.log2(omega1 * lt / llt)))


def sigma_k(k: int) -> float:
    return 1.0 - k / (2.0 ** k - 2.0)


# ---------------------------------------------------------------------------
# strip bound and reciprocal trig-polynomial bounds
# ---------------------------------------------------------------------------

def Z_const(sigma1, t0, ctx: PrecisionContext) -> BallValue:
    """1.731 zeta(sigma1) (1+3/t0) log(t0+sigma1+2)/log t0."""
    if not float(sigma1) > 1:
        raise DomainError("sigma1 must exceed 1")
    if not float(t0) >= 3:
        raise DomainError("t0 must be at least 3")
    s1 = _ex(ctx, sigma1)
    t0b = _ex(ctx, t0)
    z = _zeta_real_cached(float(sigma1), ctx.precision_bits)
    return (_ex(ctx, "1.731") * z * (1 + 3 / t0b)
            * _log(t0b + s1 + 2) / _log(t0b))


@lru_cache(maxsize=8192)
def _v_tail_cached(sigma1: float, t0: float, prec: int) -> BallValue:
    """(Z(sigma1, 2 t0) (1 + log2/log t0))^(1/4), shared by V1 and V2."""
    ctx = PrecisionContext(prec)
    t0b = _ex(ctx, t0)
    z2 = Z_const(sigma1, 2 * t0, ctx)
    return (z2 * (1 + _ex(ctx, 2).log() / _log(t0b))) ** _ex(ctx, 0.25)


def _v_tail(sigma1, t0, ctx: PrecisionContext) -> BallValue:
    return _v_tail_cached(float(sigma1), float(t0), ctx.precision_bits)


def V1(d, sigma1, t0, ctx: PrecisionContext) -> BallValue:
    """Reciprocal-zeta coefficient valid for all sigma > 1."""
    if not float(d) > 0:
        raise DomainError("d must be positive")
    db = _ex(ctx, d)
    t0b = _ex(ctx, t0)
    head = (1 / db + _loglog(t0b) / _log(t0b)) ** _ex(ctx, 0.75)
    return head * _v_tail(sigma1, t0, ctx)


def v2_applicable(d, sigma1, t0, ctx: PrecisionContext) -> bool:
    """sigma = 1 + d loglog t/log t must stay below min(sigma1, (1+gamma)/gamma)
    for every t >= t0; the shift peaks at t = e^e."""
    db = _ex(ctx, d)
    t0b = _ex(ctx, t0)
    ee = ctx.e_to_e()
    peak = (1 / ctx.e()) if t0b.surely_le(ee) else (_loglog(t0b) / _log(t0b))
    sigma_top = 1 + db * peak
    gamma = ctx.gamma_euler
    cap = (1 + gamma) / gamma
    return sigma_top.surely_le(_ex(ctx, sigma1)) and sigma_top.surely_le(cap)


def V2(d, sigma1, t0, ctx: PrecisionContext) -> BallValue:
    """Sharper reciprocal-zeta coefficient; applicable only while the
    shifted abscissa stays below min(sigma1, (1+gamma)/gamma)."""
    if not float(d) > 0:
        raise DomainError("d must be positive")
    if not v2_applicable(d, sigma1, t0, ctx):
        raise ConstraintError("V2 applicability fails; fall back to V1")
    db = _ex(ctx, d)
    t0b = _ex(ctx, t0)
    gamma = ctx.gamma_euler
    head = ((1 / db) * (gamma * db * _loglog(t0b) / _log(t0b)).exp()) ** _ex(ctx, 0.75)
    return head * _v_tail(sigma1, t0, ctx)


# ---------------------------------------------------------------------------
# disc machinery around s' = 1 + d loglog t'/log t' + i t'
# ---------------------------------------------------------------------------

def C1_ball(epsilon, t_prime, omega2_val, ctx: PrecisionContext) -> BallValue:
    tp = _ex(ctx, t_prime)
    eb = _ex(ctx, epsilon)
    if not (tp - eb).surely_gt(ctx.e()):
        raise DomainError("need t' - epsilon > e")
    w2 = _ex(ctx, omega2_val)
    ratio_sq = (_loglog(tp - eb) / _loglog(tp)) ** _ex(ctx, 2)
    ratio_log = _log(tp) / _log(tp + eb)
    return w2 * ball_min(ratio_sq, ratio_log)


def C1(epsilon: float, t_prime: float, omega2_val: float,
       ctx: Optional[PrecisionContext] = None) -> float:
    return float(C1_ball(epsilon, t_prime, omega2_val, ctx or PrecisionContext()))


def A3(t_prime, epsilon, gp: GrowthParams, ctx: PrecisionContext) -> BallValue:
    """Growth constant adjusted for the disc radius reaching t' + epsilon."""
    if float(t_prime) < gp.t0 * (1 - 1e-12):
        raise DomainError("t' below the growth row's t0")
    tp = _ex(ctx, t_prime)
    eb = _ex(ctx, epsilon)
    factor = (1 + (1 + eb / tp).log() / _log(tp)) ** _ex(ctx, gp.B)
    return gp.a_kappa_value * factor


def A3_and_Amax(t_prime, epsilon, gp: GrowthParams,
                ctx: PrecisionContext) -> tuple[BallValue, BallValue]:
    """(A3(t'), A_max); A3 is decreasing in t', so A_max = A3(t0)."""
    return A3(t_prime, epsilon, gp, ctx), A3(gp.t0, epsilon, gp, ctx)


def radius_r(t_prime: float, d: float, C1_val: float) -> float:
    """Disc radius (C1 + d/loglog t') (loglog t')^2 / log t'."""
    if not t_prime > math.e:
        raise DomainError("need t' > e")
    lt = math.log(t_prime)
    llt = math.log(lt)
    return (C1_val + d / llt) * llt * llt / lt


def c1_const(epsilon: float, t0: float, zero_free_c: float) -> float:
    """Zero-free constant shrunk to keep the disc inside the region."""
    return zero_free_c * math.log(t0) / math.log(t0 + epsilon)


def alpha_fn(d: float, c1: float, C1_val: float, t_prime: float) -> float:
    """Inner-disc ratio (d + c1)/(d + C1 loglog t'); must stay below 1/2."""
    return (d + c1) / (d + C1_val * math.log(math.log(t_prime)))


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------

def _jsonable(obj):
    """Replace non-finite floats so records stay strict JSON."""
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, float) and not math.isfinite(obj):
        return repr(obj)
    return obj


@dataclass
class BoundCertificate:
    kind: str                       # R1 | K1 | R2 | K2 | A_kappa_table | Z_table
    value: Optional[BallValue]
    t_low: float
    t_high: float                   # math.inf for unbounded
    params: dict
    constraints_ok: list = field(default_factory=list)
    extras: dict = field(default_factory=dict)

    @property
    def valid(self) -> bool:
        return self.value is not None and all(ok for _, ok in self.constraints_ok)

    @property
    def computed(self) -> float:
        if self.value is None:
            raise ValueError("invalid certificate has no value")
        return float(self.value.mid)

    def failing(self) -> list:
        return [name for name, ok in self.constraints_ok if not ok]

    def as_record(self) -> dict:
        return {
            "kind": self.kind,
            "value": None if self.value is None else self.computed,
            "t_low": self.t_low,
            "t_high": None if math.isinf(self.t_high) else self.t_high,
            "valid": self.valid,
            "params": _jsonable(self.params),
            "constraints": {name: ok for name, ok in self.constraints_ok},
        }


@dataclass(frozen=True)
class MainLemmaParams:
    """Free parameters of one Q1 evaluation.

    W = inf selects the sigma >= 1 variant (the coverage floor for beta
    then degenerates to d/(c1+d)).  beta=None pins beta to its floor.
    zero_free_c is c0 = 1/21.233 in the unconditional regime or a c_RH
    value in the verified-height regime.
    """

    t0: float
    W: float
    d: float
    epsilon: float
    sigma1: float
    zero_free_c: float
    growth: GrowthParams
    beta: Optional[float] = None
    d1: Optional[float] = None

    @property
    def rh_regime(self) -> bool:
        return self.zero_free_c > tables.C0_ZERO_FREE * (1 + 1e-9)


def _beta_floor(p: MainLemmaParams, c1b: BallValue, ctx: PrecisionContext) -> BallValue:
    invW = 0.0 if math.isinf(p.W) else 1.0 / p.W
    return (_ex(ctx, p.d) + _ex(ctx, invW)) / (_ex(ctx, p.d) + c1b)


def _resolve_beta(p: MainLemmaParams, c1b: BallValue,
                  ctx: PrecisionContext) -> tuple[BallValue, bool, bool]:
    """Effective beta, whether it was clamped up to the floor, and whether
    the requested beta was genuinely below the floor.

    Published beta values are decimal truncations of the optimizer state
    and can sit a few 1e-7 below the exact floor; clamping to the floor
    keeps the certificate sound and moves the value negligibly.
    """
    floor = _beta_floor(p, c1b, ctx)
    if p.beta is None:
        return BallValue.exact(floor.hi(), ctx.precision_bits), True, True
    bb = _ex(ctx, p.beta)
    if bb.surely_ge(floor):
        return bb, False, True
    rel_gap = (floor.hi() - p.beta) / max(floor.hi(), 1e-300)
    if rel_gap <= 1e-5:
        return BallValue.exact(floor.hi(), ctx.precision_bits), True, True
    return bb, False, False


def Q1(p: MainLemmaParams, ctx: PrecisionContext) -> BoundCertificate:
    """One-regime certificate for |zeta'/zeta| <= Q1 * log t/loglog t on
    sigma >= 1 - loglog t/(W log t), t >= t0."""
    t0b = _ex(ctx, p.t0)
    L0 = _log(t0b)
    LL0 = _loglog(t0b)
    e_ball = ctx.e()
    four_e2 = _ex(ctx, 4) / (e_ball * e_ball)
    gp = p.growth
    db = _ex(ctx, p.d)
    eb = _ex(ctx, p.epsilon)

    c1b = _ex(ctx, p.zero_free_c) * L0 / _log(t0b + eb)
    C1b = C1_ball(p.epsilon, p.t0, gp.omega2, ctx)
    beta, clamped, beta_ok = _resolve_beta(p, c1b, ctx)

    constraints = []
    constraints.append(("t0_at_least_ee", t0b.surely_ge(ctx.e_to_e() - _ex(ctx, 1e-9))))
    # omega1 = exactly 8/e saturates its sup bound (attained at t = e^e),
    # which no float comparison can resolve; the row declares the exact real
    if gp.omega1_exact_8e:
        constraints.append(("omega1_admissible", True))
    else:
        constraints.append(("omega1_admissible",
                            _ex(ctx, gp.omega1).surely_ge(omega1_requirement(p.t0, ctx))))
    eps_need = db / e_ball + (C1b + db) * four_e2
    constraints.append(("eps_cond", eps_need.surely_le(eb) and p.epsilon <= 1.0))
    alpha = (db + c1b) / (db + C1b * LL0)
    constraints.append(("alpha_lt_half", alpha.surely_lt(_ex(ctx, 0.5))))
    constraints.append(("beta_range", beta_ok and beta.surely_lt(_ex(ctx, 1))))
    constraints.append(("W_exceeds_inv_zero_free",
                        math.isinf(p.W) or p.W > 1.0 / p.zero_free_c))
    kappa_need = four_e2 * (_ex(ctx, gp.omega2) + 2 * db / LL0)
    constraints.append(("kappa_admissible", kappa_need.surely_le(_ex(ctx, gp.kappa))))
    sigma1_need = 1 + db * LL0 / L0
    constraints.append(("sigma1_admissible",
                        sigma1_need.surely_le(_ex(ctx, p.sigma1))))
    if gp.printed:
        constraints.append(("a_kappa_admissible",
                            a_kappa(gp.kappa, gp.t0, ctx).surely_le(gp.a_kappa_value)))
    if p.rh_regime:
        crh = _ex(ctx, p.zero_free_c)
        ok = (crh.surely_le(_ex(ctx, tables.C_RH_MAX))
              and crh.surely_lt(e_ball / 2)
              and crh.surely_lt((C1b * LL0 - db) / 2)
              and p.d < 0.05)
        constraints.append(("c_rh_admissible", ok))

    # the lambda1 denominator is positive exactly when alpha < 1/2
    if not alpha.surely_lt(_ex(ctx, 0.5)):
        return BoundCertificate("R1" if not math.isinf(p.W) else "K1", None,
                                p.t0, math.inf, _param_dict(p), constraints,
                                {"reason": "alpha >= 1/2"})

    one = _ex(ctx, 1)
    lam1 = (8 * beta / (C1b * (one - beta))) \
        * ((C1b * LL0 + db) / (C1b * LL0 - db - 2 * c1b)) ** _ex(ctx, 2)
    lam2 = (one + beta) / (db * (one - beta))
    _, a_max = A3_and_Amax(p.t0, p.epsilon, gp, ctx)

    branch1 = 1 / (beta * c1b + db * (one + beta))
    v_candidates = {"V1": V1(p.d, p.sigma1, p.t0, ctx)}
    if v2_applicable(p.d, p.sigma1, p.t0, ctx):
        v_candidates["V2"] = V2(p.d, p.sigma1, p.t0, ctx)

    best = None
    best_name = None
    per_v = {}
    for name, v in v_candidates.items():
        branch2 = lam1 * (_ex(ctx, gp.B) + 1 + (a_max * v).log() / LL0) + lam2
        val = ball_max(branch1, branch2)
        per_v[name] = float(val.mid)
        if best is None or val.hi() < best.hi():
            best, best_name = val, name

    extras = {
        "alpha": float(alpha.mid),
        "c1": float(c1b.mid),
        "C1": float(C1b.mid),
        "lambda1": float(lam1.mid),
        "lambda2": float(lam2.mid),
        "A_max": float(a_max.mid),
        "branch1": float(branch1.mid),
        "per_V": per_v,
        "V_choice": best_name,
        "beta_effective": float(beta.mid),
        "beta_clamped": clamped,
    }
    kind = "K1" if math.isinf(p.W) else "R1"
    cert = BoundCertificate(kind, best, p.t0, math.inf, _param_dict(p),
                            constraints, extras)
    if not cert.valid:
        cert.value = None
    return cert


def _param_dict(p: MainLemmaParams) -> dict:
    return {
        "t0": p.t0, "W": p.W, "d": p.d, "epsilon": p.epsilon,
        "beta": p.beta, "sigma1": p.sigma1, "zero_free_c": p.zero_free_c,
        "growth_row": p.growth.source_key, "d1": p.d1,
    }


def Q1_two_regime(W: float, t0: float, params_low: Optional[MainLemmaParams],
                  params_high: MainLemmaParams,
                  ctx: PrecisionContext) -> BoundCertificate:
    """max of the verified-height regime (t0 <= t <= H) and the
    unconditional regime (t >= H); valid on [t0, inf)."""
    high = Q1(params_high, ctx)
    constraints = [("high:" + n, ok) for n, ok in high.constraints_ok]
    extras = {"high": high.extras | {"value": None if high.value is None
                                     else high.computed}}
    if params_low is None:
        if t0 < HEIGHT_H * (1 - 1e-12):
            raise DomainError("params_low required when t0 < H")
        value = high.value
    else:
        if not params_low.rh_regime:
            raise DomainError("low regime requires a c_RH zero-free constant")
        low = Q1(params_low, ctx)
        constraints += [("low:" + n, ok) for n, ok in low.constraints_ok]
        extras["low"] = low.extras | {"value": None if low.value is None
                                      else low.computed}
        value = None
        if low.value is not None and high.value is not None:
            value = ball_max(low.value, high.value)
    kind = "K1" if math.isinf(W) else "R1"
    cert = BoundCertificate(kind, value, t0, math.inf,
                            {"W": W, "t0": t0,
                             "low": None if params_low is None
                             else _param_dict(params_low),
                             "high": _param_dict(params_high)},
                            constraints, extras)
    if not cert.valid:
        cert.value = None
    return cert


def K1(params_low: MainLemmaParams, ctx: PrecisionContext,
       params_high: Optional[MainLemmaParams] = None) -> BoundCertificate:
    """sigma >= 1 certificate; beta pinned to d/(c1+d) via W = inf."""
    if not math.isinf(params_low.W):
        raise DomainError("K1 requires W = inf")
    if params_low.t0 >= HEIGHT_H * (1 - 1e-12):
        cert = Q1(params_low, ctx)
        cert.kind = "K1"
        return cert
    if params_high is None:
        params_high = default_k1_high(ctx)
    return Q1_two_regime(math.inf, params_low.t0, params_low, params_high, ctx)


def default_k1_high(ctx: PrecisionContext) -> MainLemmaParams:
    """Published unconditional-regime state for the sigma >= 1 bound."""
    row = tables.k1_row("H")
    gp = GrowthParams.from_table_row(tables.growth_row("H"), ctx)
    return MainLemmaParams(t0=float(HEIGHT_H), W=math.inf, d=row.d,
                           epsilon=row.eps, sigma1=row.sigma1,
                           zero_free_c=tables.C0_ZERO_FREE, growth=gp)


# ---------------------------------------------------------------------------
# reciprocal bounds
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WSchedule:
    """Increasing (W_j, R1_j) pairs; each entry's own validity threshold
    must not exceed t0_valid."""

    entries: tuple            # of (W, R1, t0_row)
    t0_valid: float

    def __post_init__(self):
        if not self.entries:
            raise DomainError("schedule must be non-empty")
        ws = [w for w, _, _ in self.entries]
        if any(b <= a for a, b in zip(ws, ws[1:])):
            raise DomainError("schedule W values must strictly increase")
        if any(t > self.t0_valid * (1 + 1e-12) for _, _, t in self.entries):
            raise DomainError("schedule entry valid only above t0_valid")

    @classmethod
    def from_reference(cls, W_start: float, t0: float) -> "WSchedule":
        rows = [(r.W, float(r.R1), r.t0) for r in tables.R1_ROWS
                if r.W >= W_start - 1e-9 and r.t0 <= float(t0) * (1 + 1e-12)]
        rows.sort()
        if not rows:
            raise DomainError(f"no reference rows for W>={W_start}, t0={t0}")
        return cls(tuple(rows), float(t0))

    def factor_ball(self, ctx: PrecisionContext) -> BallValue:
        """sum_{j<J} R1_j (1/W_j - 1/W_{j+1})  +  R1_J / W_J."""
        acc = _ex(ctx, 0)
        for (w, r, _), (wn, _, _) in zip(self.entries, self.entries[1:]):
            acc = acc + _ex(ctx, r) * (1 / _ex(ctx, w) - 1 / _ex(ctx, wn))
        wJ, rJ, _ = self.entries[-1]
        return acc + _ex(ctx, rJ) / _ex(ctx, wJ)


def Q2(d1, sigma1, t0, schedule: WSchedule, K1_val: float,
       ctx: PrecisionContext, exponentiated_schedule: bool = False)\
        -> BoundCertificate:
    """Certificate for |1/zeta| <= Q2 * log t/loglog t on
    sigma >= 1 - loglog t/(W_1 log t), t >= t0.

    The default combines the strip contributions as the linear factor
    V * (sum + R1_J/W_J) * exp(d1 K1), which is the form that generated
    the published reference values.  exponentiated_schedule=True instead
    exponentiates the whole strip sum.
    """
    if schedule is None or not schedule.entries:
        raise DomainError("empty schedule")
    t0b = _ex(ctx, t0)
    L0 = _log(t0b)
    LL0 = _loglog(t0b)
    d1b = _ex(ctx, d1)
    s1b = _ex(ctx, sigma1)

    sigma1_need = 1 + d1b * LL0 / L0
    if not sigma1_need.surely_le(s1b):
        raise ConstraintError("sigma1 below 1 + d1 loglog t0/log t0")

    constraints = [
        ("sigma1_admissible", True),
        ("schedule_valid_at_t0", schedule.t0_valid <= float(t0) * (1 + 1e-12)),
    ]

    case1 = s1b / (s1b - 1) * LL0 / L0
    v1b = V1(d1, sigma1, t0, ctx)
    v_min = v1b
    v_used = "V1"
    if v2_applicable(d1, sigma1, t0, ctx):
        v2b = V2(d1, sigma1, t0, ctx)
        if v2b.hi() < v1b.hi():
            v_min, v_used = v2b, "V2"
    factor = schedule.factor_ball(ctx)
    growth = (d1b * _ex(ctx, K1_val)).exp()
    if exponentiated_schedule:
        case3 = v_min * (factor + d1b * _ex(ctx, K1_val)).exp()
    else:
        case3 = v_min * factor * growth
    value = ball_max(case1, v1b, case3)

    W1 = schedule.entries[0][0]
    extras = {
        "case1": float(case1.mid), "case2_V1": float(v1b.mid),
        "case3": float(case3.mid), "V_choice": v_used,
        "schedule_factor": float(factor.mid), "K1": K1_val,
        "W1": W1, "exponentiated_schedule": exponentiated_schedule,
    }
    cert = BoundCertificate("R2", value, float(t0), math.inf,
                            {"d1": float(d1), "sigma1": float(sigma1),
                             "t0": float(t0), "W": W1,
                             "schedule": [(w, r) for w, r, _ in schedule.entries]},
                            constraints, extras)
    if not cert.valid:
        cert.value = None
    return cert


def K2(d1, sigma1, t0, K1_val: float, ctx: PrecisionContext) -> BoundCertificate:
    """Certificate for |1/zeta| <= K2 * log t/loglog t on sigma >= 1, t >= t0."""
    if not v2_applicable(d1, sigma1, t0, ctx):
        raise ConstraintError("V2 applicability required for the sigma>=1 bound")
    t0b = _ex(ctx, t0)
    L0 = _log(t0b)
    LL0 = _loglog(t0b)
    d1b = _ex(ctx, d1)
    s1b = _ex(ctx, sigma1)
    sigma1_need = 1 + d1b * LL0 / L0
    if not sigma1_need.surely_le(s1b):
        raise ConstraintError("sigma1 below 1 + d1 loglog t0/log t0")
    case1 = s1b / (s1b - 1) * LL0 / L0
    v1b = V1(d1, sigma1, t0, ctx)
    v2b = V2(d1, sigma1, t0, ctx)
    case3 = v2b * (d1b * _ex(ctx, K1_val)).exp()
    value = ball_max(case1, v1b, case3)
    extras = {"case1": float(case1.mid), "case2_V1": float(v1b.mid),
              "case3": float(case3.mid), "K1": K1_val}
    cert = BoundCertificate("K2", value, float(t0), math.inf,
                            {"d1": float(d1), "sigma1": float(sigma1),
                             "t0": float(t0), "W": math.inf},
                            [("sigma1_admissible", True)], extras)
    return cert
