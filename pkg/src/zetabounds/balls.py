"""Midpoint-radius ("ball") arithmetic on top of mpmath.

A ball is a midpoint (mpmath ``mpf`` or ``mpc``) together with a float
radius bounding the distance to the exact value.  Every operation returns
a ball whose radius encloses the exact result:

  * radius propagation uses the standard first-order enclosure formulas
    (exact, not linearised, wherever the formula is exact), and
  * every float computation on radii is padded by a small multiplicative
    slop so that double rounding cannot shrink a bound.  Radius formulas
    here use at most a few dozen float operations, which the slop of
    2**-40 covers by a wide margin (each float op errs by at most 2**-53
    relative).

Midpoints are computed by mpmath at the ball's working precision with a
few guard bits; a rounding allowance of ``|mid| * 2**(4 - prec)`` is
folded into each derived radius.  mpmath rounds field operations to under
an ulp and evaluates elementary functions to within a few ulp, so the
allowance is conservative.

Radii are doubles.  That is enough: the smallest radius this package ever
needs to represent is around 2**-300, far above the double denormal range,
and raw enclosure widths only ever need one or two significant digits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
from mpmath import mp

__all__ = [
    "BallValue",
    "PrecisionContext",
    "DomainError",
    "PoleError",
    "IndeterminateError",
    "ConstraintError",
    "HEIGHT_H",
]

# Height to which all non-trivial zeros are verified to lie on the
# critical line; splits every two-regime computation.
HEIGHT_H = 3_000_175_332_800

# Multiplicative padding for float radius arithmetic.
_SLOP = 1.0 + 2.0 ** -40
# Absolute floor, guards against a radius formula rounding to exactly 0.
_TINY = 5e-324


class DomainError(ValueError):
    """Argument outside an operation's stated domain."""


class PoleError(DomainError):
    """Evaluation requested at a pole."""


class IndeterminateError(ArithmeticError):
    """A ball straddles a singular set (e.g. division by a ball
    containing zero); the caller should raise precision and retry."""


class ConstraintError(ValueError):
    """A formula's applicability precondition fails."""


def _mag(x) -> float:
    """|x| as a float, rounded up a step."""
    a = abs(x)
    f = float(a)
    if not math.isfinite(f):
        raise OverflowError("ball midpoint magnitude outside double range")
    return math.nextafter(f, math.inf) if f else 0.0


def _pad(r: float) -> float:
    return r * _SLOP + _TINY


class BallValue:
    """A real or complex midpoint with a rigorous error radius."""

    __slots__ = ("mid", "rad", "prec")

    def __init__(self, mid, rad: float = 0.0, prec: int = 113):
        if isinstance(mid, BallValue):
            raise TypeError("midpoint must be a number, not a ball")
        self.mid = mid if isinstance(mid, (mpmath.mpf, mpmath.mpc)) else mpmath.mpf(mid)
        self.rad = float(rad)
        self.prec = int(prec)
        if not (self.rad >= 0.0 and math.isfinite(self.rad)):
            raise ValueError(f"invalid radius {rad!r}")

    # -- construction -----------------------------------------------------

    @classmethod
    def exact(cls, x, prec: int = 113) -> "BallValue":
        """Ball of radius 0 around an exactly representable number.

        ``x`` may be an int, float, mpf/mpc, or a decimal string (parsed
        at the working precision, with the parse rounding accounted for).
        """
        if isinstance(x, str):
            with mp.workprec(prec + 10):
                v = mpmath.mpf(x)
            return cls(v, _pad(_mag(v) * 2.0 ** (4 - prec)), prec)
        return cls(x, 0.0, prec)

    @classmethod
    def from_endpoints(cls, lo: float, hi: float, prec: int = 113) -> "BallValue":
        if hi < lo:
            raise ValueError("empty interval")
        mid = (mpmath.mpf(lo) + mpmath.mpf(hi)) / 2
        rad = _pad((hi - lo) / 2.0 + _mag(mid) * 2.0 ** (1 - prec))
        return cls(mid, rad, prec)

    # -- basic queries ----------------------------------------------------

    @property
    def is_complex(self) -> bool:
        return isinstance(self.mid, mpmath.mpc)

    def lo(self) -> float:
        """Float lower bound of a real ball."""
        self._require_real()
        f = float(self.mid)
        return math.nextafter(math.nextafter(f, -math.inf) - self.rad, -math.inf)

    def hi(self) -> float:
        """Float upper bound of a real ball."""
        self._require_real()
        f = float(self.mid)
        return math.nextafter(math.nextafter(f, math.inf) + self.rad, math.inf)

    def mag_hi(self) -> float:
        """Upper bound on |value|."""
        return _pad(_mag(self.mid) + self.rad)

    def mag_lo(self) -> float:
        """Lower bound on |value| (0 if the ball may contain 0)."""
        m = float(abs(self.mid))
        m = math.nextafter(m, -math.inf) - self.rad
        return max(m, 0.0)

    def contains(self, x) -> bool:
        with mp.workprec(max(self.prec, 113) + 20):
            d = abs(self.mid - (mpmath.mpf(x) if not isinstance(x, mpmath.mpc) else x))
        return float(d) <= self.rad * _SLOP

    def contains_zero(self) -> bool:
        return self.mag_lo() <= 0.0

    def surely_lt(self, other) -> bool:
        other = _ball(other, self.prec)
        return self.hi() < other.lo()

    def surely_le(self, other) -> bool:
        other = _ball(other, self.prec)
        return self.hi() <= other.lo()

    def surely_gt(self, other) -> bool:
        return _ball(other, self.prec).surely_lt(self)

    def surely_ge(self, other) -> bool:
        return _ball(other, self.prec).surely_le(self)

    def _require_real(self):
        if self.is_complex:
            raise TypeError("operation defined for real balls only")

    def __repr__(self):
        kind = "c" if self.is_complex else "r"
        return f"BallValue[{kind}]({mpmath.nstr(self.mid, 17)} +/- {self.rad:.3e})"

    def __float__(self):
        self._require_real()
        return float(self.mid)

    # -- ring operations --------------------------------------------------

    def _wp(self, other_prec: int = 0) -> int:
        return max(self.prec, other_prec)

    def __add__(self, other):
        o = _ball(other, self.prec)
        p = self._wp(o.prec)
        with mp.workprec(p + 10):
            m = self.mid + o.mid
        return BallValue(m, _pad(self.rad + o.rad + _mag(m) * 2.0 ** (1 - p)), p)

    __radd__ = __add__

    def __neg__(self):
        return BallValue(-self.mid, self.rad, self.prec)

    def __sub__(self, other):
        return self + (-_ball(other, self.prec))

    def __rsub__(self, other):
        return _ball(other, self.prec) + (-self)

    def __mul__(self, other):
        o = _ball(other, self.prec)
        p = self._wp(o.prec)
        with mp.workprec(p + 10):
            m = self.mid * o.mid
        r = _mag(self.mid) * o.rad + _mag(o.mid) * self.rad + self.rad * o.rad
        return BallValue(m, _pad(r + _mag(m) * 2.0 ** (1 - p)), p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _ball(other, self.prec)
        blo = o.mag_lo()
        if blo <= o.rad or blo <= 0.0:
            raise IndeterminateError("division by a ball that may contain zero")
        p = self._wp(o.prec)
        with mp.workprec(p + 10):
            m = self.mid / o.mid
        bmag = _mag(o.mid)
        r = (self.rad * bmag + _mag(self.mid) * o.rad) / (bmag * blo)
        return BallValue(m, _pad(r + _mag(m) * 2.0 ** (1 - p)), p)

    def __rtruediv__(self, other):
        return _ball(other, self.prec) / self

    # -- elementary functions (real balls, plus complex abs/exp-free) ----

    def __abs__(self):
        """Ball containing |value|; exact for the abs map."""
        with mp.workprec(self.prec + 10):
            m = abs(self.mid)
        return BallValue(m, _pad(self.rad + _mag(m) * 2.0 ** (1 - self.prec)), self.prec)

    def exp(self):
        self._require_real()
        p = self.prec
        with mp.workprec(p + 20):
            m = mpmath.exp(self.mid)
        # |e^x - e^mid| <= e^mid (e^rad - 1) on the ball
        r = _mag(m) * math.expm1(self.rad) if self.rad else 0.0
        return BallValue(m, _pad(r + _mag(m) * 2.0 ** (4 - p)), p)

    def log(self):
        self._require_real()
        l = self.lo()
        if l <= 0.0:
            raise DomainError("log of a ball touching (-inf, 0]")
        p = self.prec
        with mp.workprec(p + 20):
            m = mpmath.log(self.mid)
        r = self.rad / l  # sup |1/x| on the ball
        return BallValue(m, _pad(r + _mag(m) * 2.0 ** (4 - p) + 2.0 ** (4 - p)), p)

    def sqrt(self):
        self._require_real()
        l = self.lo()
        if l < 0.0:
            raise DomainError("sqrt of a ball touching negatives")
        p = self.prec
        with mp.workprec(p + 20):
            m = mpmath.sqrt(self.mid)
        denom = math.sqrt(l) + float(m)
        r = self.rad / denom if denom > 0.0 else math.sqrt(self.rad)
        return BallValue(m, _pad(r + _mag(m) * 2.0 ** (4 - p)), p)

    def __pow__(self, expo):
        """x**y for a positive real ball x; y real ball or number."""
        self._require_real()
        e = _ball(expo, self.prec)
        return (e * self.log()).exp()

    # -- lattice helpers on real balls ------------------------------------

    def min_with(self, other) -> "BallValue":
        o = _ball(other, self.prec)
        lo = min(self.lo(), o.lo())
        hi = min(self.hi(), o.hi())
        return BallValue.from_endpoints(lo, hi, self._wp(o.prec))

    def max_with(self, other) -> "BallValue":
        o = _ball(other, self.prec)
        lo = max(self.lo(), o.lo())
        hi = max(self.hi(), o.hi())
        return BallValue.from_endpoints(lo, hi, self._wp(o.prec))


def _ball(x, prec: int) -> BallValue:
    if isinstance(x, BallValue):
        return x
    return BallValue.exact(x, prec)


def ball_min(*xs: BallValue) -> BallValue:
    out = xs[0]
    for x in xs[1:]:
        out = out.min_with(x)
    return out


def ball_max(*xs: BallValue) -> BallValue:
    out = xs[0]
    for x in xs[1:]:
        out = out.max_with(x)
    return out


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision plus the few shared derived constants.

    gamma_euler always contains Euler's constant; height_H is the exact
    verification height splitting the two optimization regimes.
    """

    precision_bits: int = 128
    height_H: int = HEIGHT_H

    def __post_init__(self):
        if self.precision_bits < 64:
            raise ValueError("precision_bits must be at least 64")
        if self.height_H != HEIGHT_H:
            raise ValueError("height_H is fixed")

    @property
    def gamma_euler(self) -> BallValue:
        p = self.precision_bits
        with mp.workprec(p + 20):
            g = +mpmath.euler
        return BallValue(g, _mag(g) * 2.0 ** (2 - p), p)

    def exact(self, x) -> BallValue:
        return BallValue.exact(x, self.precision_bits)

    def e(self) -> BallValue:
        p = self.precision_bits
        with mp.workprec(p + 20):
            v = mpmath.exp(1)
        return BallValue(v, _mag(v) * 2.0 ** (2 - p), p)

    def e_to_e(self) -> BallValue:
        return self.e().exp()

    def double(self) -> "PrecisionContext":
        return PrecisionContext(self.precision_bits * 2)


DEFAULT_CTX = PrecisionContext()
