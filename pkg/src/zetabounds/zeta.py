"""Euler-Maclaurin evaluation of zeta(s), zeta'(s) and zeta'/zeta with balls.

The expansion used, valid for sigma + 2M > 0 and any integer N >= 2:

    zeta(s) = sum_{n<N} n^-s  +  N^(1-s)/(s-1)  +  N^-s / 2
              + sum_{k=1..M} B_{2k}/(2k)! * P_k(s) * N^(-s-2k+1)  +  R_M(s, N)

with P_k(s) = prod_{j=0..2k-2} (s+j) and the remainder written as

    R_M = -1/(2M+1)! * int_N^inf  Btilde_{2M+1}(x) * d^{2M+1}/dx^{2M+1} x^-s dx.

Bounding |Btilde_m(x)| <= 2 zeta(m) m! / (2pi)^m <= 2.5 m! / (2pi)^m gives

    |R_M|  <= 2.5 * prod_{j=0..2M} |s+j| * N^(-sigma-2M) / ((2pi)^(2M+1) (sigma+2M))
    |R_M'| <= |R_M| * sum_j 1/|s+j|
              + 2.5 * prod |s+j| * N^(-sigma-2M) * (log N/(sigma+2M) + 1/(sigma+2M)^2)
                / (2pi)^(2M+1)

The derivative expansion is the term-by-term derivative of the same
formula, so one remainder analysis covers both.  (N, M) are tuned per
call against the requested absolute target using the bound above, then
the relative-radius contract is enforced by retrying with a tighter
absolute target when the value turns out to be small.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath
from mpmath import mp

from .balls import (
    BallValue,
    PrecisionContext,
    DomainError,
    PoleError,
    IndeterminateError,
    _mag,
    _pad,
)

__all__ = [
    "ComplexPoint",
    "zeta_real",
    "zeta_complex",
    "zeta_prime",
    "zeta_and_prime",
    "log_deriv",
    "eta_oracle",
]

_LOG2PI = math.log(2.0 * math.pi)
_MAX_M = 70


@dataclass(frozen=True)
class ComplexPoint:
    """A point s = sigma + i t."""

    sigma: float
    t: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.sigma) and math.isfinite(self.t)):
            raise DomainError("sigma and t must be finite")

    def to_mp(self):
        if self.t == 0.0:
            return mpmath.mpf(self.sigma)
        return mpmath.mpc(self.sigma, self.t)


def _as_mp(s):
    if isinstance(s, ComplexPoint):
        return s.to_mp()
    if isinstance(s, (mpmath.mpf, mpmath.mpc, int, float)):
        return s if isinstance(s, (mpmath.mpf, mpmath.mpc)) else mpmath.mpf(s)
    if isinstance(s, complex):
        return mpmath.mpc(s.real, s.imag)
    raise TypeError(f"cannot interpret {s!r} as a point")


def _log_remainders(sigma: float, t: float, N: int, M: int) -> tuple[float, float]:
    """Natural logs of the zeta and zeta' remainder bounds."""
    a = sigma + 2.0 * M
    if a <= 0.0:
        return math.inf, math.inf
    logprod = 0.0
    suminv = 0.0
    for j in range(2 * M + 1):
        m = math.hypot(sigma + j, t)
        if m == 0.0:
            return math.inf, math.inf
        logprod += math.log(m)
        suminv += 1.0 / m
    logN = math.log(N)
    base = math.log(2.5) + logprod - a * logN - (2 * M + 1) * _LOG2PI
    r0 = base - math.log(a)
    r1 = max(r0 + math.log(max(suminv, 1e-300)),
             base + math.log(logN / a + 1.0 / (a * a)))
    return r0, r1 + math.log(2.0)


def _tune(sigma: float, t: float, prec: int, log_target: float,
          want_prime: bool) -> tuple[int, int]:
    """Smallest (N, M) with remainder bound below exp(log_target)."""
    at = abs(t)
    M = min(_MAX_M, max(14, prec // 5 + 10))
    N = max(10, int(0.25 * at) + 8)
    for _ in range(200):
        r0, r1 = _log_remainders(sigma, at, N, M)
        if (r1 if want_prime else r0) <= log_target:
            return N, M
        # growing M is cheap while the correction terms still shrink
        if M < _MAX_M and (sigma + 2 * M) < 2.0 * math.pi * N:
            M = min(_MAX_M, M + 8)
        else:
            N = int(N * 1.35) + 4
    raise ArithmeticError("could not tune Euler-Maclaurin parameters")


@lru_cache(maxsize=None)
def _bernoulli_over_fact(k: int, prec: int):
    with mp.workprec(prec):
        return mpmath.bernoulli(2 * k) / mpmath.factorial(2 * k)


def _em_core(s, prec: int, target_abs: float, want_prime: bool):
    """One Euler-Maclaurin pass; returns (zeta, rad, zeta', rad')."""
    wp = prec + 32
    sigma = float(mpmath.re(s))
    t = float(mpmath.im(s))
    log_target = math.log(target_abs) - 1.0
    N, M = _tune(sigma, t, prec, log_target, want_prime)

    with mp.workprec(wp):
        one = mpmath.mpf(1)
        z = mpmath.mpf(0)
        zp = mpmath.mpf(0)
        absacc = 0.0
        for n in range(1, N):
            term = mpmath.power(n, -s)
            z += term
            absacc += _mag(term)
            if want_prime:
                zp -= mpmath.log(n) * term
        logN = mpmath.log(N)
        Npow = mpmath.power(N, -s)       # N^-s
        sm1 = s - 1
        tail0 = N * Npow / sm1           # N^(1-s)/(s-1)
        z += tail0 + Npow / 2
        absacc += _mag(tail0) + _mag(Npow)
        if want_prime:
            zp += -logN * tail0 - tail0 / sm1 - logN * Npow / 2

        # Bernoulli corrections
        P = s                             # prod_{j=0..2k-2}(s+j) at k=1
        S = 1 / s                         # sum of reciprocals, same range
        Npw = Npow / N                    # N^(-s-2k+1) at k=1
        Nm2 = one / (mpmath.mpf(N) * N)
        for k in range(1, M + 1):
            if k > 1:
                f1 = s + (2 * k - 3)
                f2 = s + (2 * k - 2)
                P = P * f1 * f2
                S = S + 1 / f1 + 1 / f2
                Npw = Npw * Nm2
            term = _bernoulli_over_fact(k, wp) * P * Npw
            z += term
            absacc += _mag(term)
            if want_prime:
                zp += term * (S - logN)

        r0, r1 = _log_remainders(sigma, abs(t), N, M)
        rem0 = math.exp(min(r0, 700.0))
        rem1 = math.exp(min(r1, 700.0)) if want_prime else 0.0
        # accumulated working-precision rounding across ~N+2M+12 operations
        rnd = _pad(absacc * (N + 2 * M + 12) * 2.0 ** (6 - wp))
        rad0 = _pad(rem0 + rnd)
        rad1 = _pad(rem1 + 8.0 * rnd * (1.0 + math.log(N))) if want_prime else 0.0
        zv = +z
        zpv = +zp if want_prime else None
    return zv, rad0, zpv, rad1


def _em_eval(s, ctx: PrecisionContext, want_prime: bool):
    """Euler-Maclaurin evaluation meeting the relative-radius contract."""
    p = ctx.precision_bits
    rel = 2.0 ** (-(p // 2))
    target = 2.0 ** (-(p // 2) - 10)
    for _ in range(4):
        z, r0, zp, r1 = _em_core(s, p, target, want_prime)
        zmag = max(float(abs(z)) - r0, 0.0)
        ok = zmag > 0.0 and r0 <= zmag * rel
        if want_prime:
            pmag = max(float(abs(zp)) - r1, 0.0)
            ok = ok and (pmag <= 0.0 or r1 <= max(pmag * rel, target * 4))
        if ok:
            break
        target = max(zmag, target / 8.0) * rel * 2.0 ** -10 if zmag else target / 64.0
    zb = BallValue(z, r0, p)
    pb = BallValue(zp, r1, p) if want_prime else None
    return zb, pb


def _check_pole(sval):
    if mpmath.im(sval) == 0 and mpmath.re(sval) == 1:
        raise PoleError("zeta has a pole at s = 1")


def zeta_real(sigma, ctx: PrecisionContext) -> BallValue:
    """zeta(sigma) for real sigma > 1, with rigorous radius."""
    sv = mpmath.mpf(sigma)
    if not sv > 1:
        raise DomainError("zeta_real requires sigma > 1")
    zb, _ = _em_eval(sv, ctx, want_prime=False)
    return zb


def zeta_complex(s, ctx: PrecisionContext) -> BallValue:
    """zeta(s) for s != 1, with rigorous radius."""
    sv = _as_mp(s)
    _check_pole(sv)
    zb, _ = _em_eval(sv, ctx, want_prime=False)
    return zb


def zeta_prime(s, ctx: PrecisionContext) -> BallValue:
    """zeta'(s) for s != 1, by term-wise differentiation of the expansion."""
    sv = _as_mp(s)
    _check_pole(sv)
    _, pb = _em_eval(sv, ctx, want_prime=True)
    return pb


def zeta_and_prime(s, ctx: PrecisionContext) -> tuple[BallValue, BallValue]:
    """(zeta(s), zeta'(s)) sharing one expansion pass."""
    sv = _as_mp(s)
    _check_pole(sv)
    zb, pb = _em_eval(sv, ctx, want_prime=True)
    return zb, pb


def log_deriv(s, ctx: PrecisionContext) -> BallValue:
    """zeta'(s)/zeta(s) in ball arithmetic.

    Raises IndeterminateError when the zeta ball contains zero; the
    caller should retry at higher precision.
    """
    zb, pb = zeta_and_prime(s, ctx)
    if zb.contains_zero():
        raise IndeterminateError("zeta ball contains zero; raise precision")
    return pb / zb


def eta_oracle(s, ctx: PrecisionContext) -> BallValue:
    """Cross-check value of zeta(s) via the alternating (eta) series,
    zeta(s) = altzeta(s) / (1 - 2^(1-s)), computed by mpmath.

    Independent of the Euler-Maclaurin path above.  The radius trusts
    mpmath's evaluation to a few ulp and carries 40 guard bits, which is
    ample for its role as a test oracle (it is not a certified enclosure).
    """
    sv = _as_mp(s)
    _check_pole(sv)
    p = ctx.precision_bits
    with mp.workprec(p + 40):
        denom = 1 - mpmath.power(2, 1 - sv)
        if abs(denom) < mpmath.mpf(2) ** (-p // 2):
            raise IndeterminateError("eta/zeta conversion factor too small")
        v = mpmath.altzeta(sv) / denom
    return BallValue(v, _pad(_mag(v) * 2.0 ** (8 - p) + 2.0 ** (8 - p - 40)), p)
