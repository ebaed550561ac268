"""Bundled reference tables: admissible parameter sets and the published
constants this package reproduces and certifies.

Six tables:

  1. growth-bound rows (t0, kappa, A_kappa, omega1, B, omega2) for
     |zeta(s)| <= A_kappa log^B t in the wide region,
  2. strip-bound constants Z(sigma1, t0) for |zeta| on 1 <= sigma <= sigma1,
  3. (W, R1) rows for |zeta'/zeta| <= R1 log t/loglog t on
     sigma >= 1 - loglog t/(W log t), with the optimizer state that
     produced each row,
  4. K1 rows for |zeta'/zeta| on sigma >= 1,
  5. (W, R2) rows for |1/zeta| in the same sloped region,
  6. K2 rows for |1/zeta| on sigma >= 1.

t0 keywords: "3", "ee" (= e^e), "2ee", "18", ..., "500", "1000",
"H" (= 3 000 175 332 800).  Downstream formulas consume the printed
constants of table 1 (they are the declared admissible values; the
rounding direction keeps every inequality valid), while table-1
reproduction recomputes them from (kappa, omega1, t0) definitions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .balls import HEIGHT_H

E_E = math.exp(math.e)  # 15.1542622...

#: keyword -> numeric t0 (floats except H, kept exact as int)
T0_KEYWORDS = {
    "3": 3.0,
    "ee": E_E,
    "2ee": 2.0 * E_E,
    "500": 500.0,
    "1000": 1000.0,
    "H": HEIGHT_H,
}


def canonical_key(key: str) -> str:
    key = key.strip()
    return "H" if key.lower() == "h" else key.lower()


def resolve_t0(value) -> float:
    """Map a CLI/user t0 spec (keyword or number) to a number."""
    if isinstance(value, str):
        key = canonical_key(value)
        if key in T0_KEYWORDS:
            return T0_KEYWORDS[key]
        return float(key)
    return float(value)


def t0_key_of(t0) -> str:
    for key, val in T0_KEYWORDS.items():
        if abs(float(t0) - float(val)) <= 1e-9 * max(1.0, abs(float(val))):
            return key
    return repr(t0)


# ---------------------------------------------------------------------------
# Table 1: growth rows
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GrowthRow:
    t0_key: str
    t0: float
    kappa: float
    a_kappa: float       # printed admissible constant (rounded up)
    omega1: float
    B: float             # printed exponent (rounded up)
    omega2: float        # printed (rounded down; smaller region, still valid)
    omega1_exact_8e: bool = False   # omega1 is the exact real 8/e, which
                                    # saturates its admissibility bound


OMEGA1_8_OVER_E = 8.0 / math.e

GROWTH_ROWS = (
    GrowthRow("3", 3.0, 1.5, 10.0, OMEGA1_8_OVER_E, 1.91, 0.309, True),
    GrowthRow("ee", E_E, 3.2, 2.5, OMEGA1_8_OVER_E, 1.91, 0.309, True),
    GrowthRow("500", 500.0, 8.1, 1.6, 2.36, 2.13, 0.386),
    GrowthRow("H", float(HEIGHT_H), 41.5, 1.6, 0.94, 3.84, 0.941),
)


def growth_row(key: str) -> GrowthRow:
    key = canonical_key(key)
    for row in GROWTH_ROWS:
        if row.t0_key == key:
            return row
    raise KeyError(key)


def pick_growth_row(t0: float) -> GrowthRow:
    """Largest-t0 growth row usable at a given t0 (row.t0 <= t0)."""
    best = None
    for row in GROWTH_ROWS:
        if row.t0 <= float(t0) * (1 + 1e-12) and (best is None or row.t0 > best.t0):
            best = row
    if best is None:
        raise KeyError(f"no growth row valid at t0={t0}")
    return best


# ---------------------------------------------------------------------------
# Table 2: strip-bound constants Z(sigma1, t0)
# ---------------------------------------------------------------------------

#: (t0_key, sigma1, Z)
Z_ROWS = (
    ("3", 4.32, 7.479),
    ("ee", 5.88, 2.439),
    ("2ee", 6.77, 2.065),
    ("500", 11.14, 1.750),
    ("1000", 11.97, 1.741),
    ("H", 11.96, 1.732),
)


# ---------------------------------------------------------------------------
# Table 3: (W, R1) rows; optimizer state (alpha1, eps, d, beta, sigma1)
# is the t >= H regime with c0 = 1/21.233.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class R1Row:
    W: float
    t0_key: str
    t0: float
    R1: float
    alpha1: float
    eps: float
    d: float
    beta: float
    sigma1: float


def _r1(W, t0k, R1, a1, eps, d, beta, s1):
    return R1Row(W, t0k, resolve_t0(t0k), R1, a1, eps, d, beta, s1)


R1_ROWS = (
    _r1(21.24, "ee", 586798, 0.02747, 0.984, 0.040833, 0.999823479, 9.59),
    _r1(21.3, "ee", 61411, 0.02736, 0.669, 0.040469, 0.998308198, 13.53),
    _r1(21.4, "ee", 24793, 0.02899, 0.571, 0.045826, 0.996044781, 13.02),
    _r1(21.5, "ee", 15547, 0.02615, 0.794, 0.036503, 0.993003844, 12.71),
    _r1(21.6, "ee", 11348, 0.02902, 0.75, 0.045935, 0.991398549, 9.02),
    _r1(21.7, "ee", 8918, 0.02822, 0.603, 0.043309, 0.988788889, 9.77),
    _r1(21.8, "ee", 7367, 0.02661, 0.792, 0.037998, 0.985604987, 13.36),
    _r1(21.9, "ee", 6272, 0.02742, 0.602, 0.040676, 0.983657702, 7.52),
    _r1(22.0, "ee", 5471, 0.02706, 0.623, 0.039479, 0.981034372, 6.45),
    _r1(22.5, "ee", 3357, 0.02772, 0.767, 0.041652, 0.970117219, 6.97),
    _r1(23.0, "ee", 2439, 0.02704, 0.598, 0.039411, 0.958174313, 9.93),
    _r1(24.0, "18", 1599, 0.02731, 0.837, 0.040295, 0.93786755, 9.83),
    _r1(25.0, "24", 1205, 0.0273, 0.908, 0.040274, 0.918777327, 13.41),
    _r1(26.0, "33", 976, 0.02723, 0.735, 0.040044, 0.90090744, 13.38),
    _r1(27.0, "45", 826, 0.02698, 0.583, 0.039199, 0.883429874, 8.34),
    _r1(29.0, "85", 643, 0.02645, 0.562, 0.037456, 0.850817294, 7.11),
    _r1(31.0, "163", 534, 0.02659, 0.849, 0.037945, 0.825515109, 8.04),
    _r1(35.0, "300", 412, 0.0262, 0.583, 0.036661, 0.778825508, 10.65),
    _r1(40.0, "490", 332, 0.02609, 0.956, 0.036301, 0.73504714, 10.04),
    _r1(50.0, "500", 256, 0.0257, 0.607, 0.035005, 0.669962863, 14.27),
    _r1(60.0, "500", 219, 0.02543, 0.838, 0.034113, 0.625294336, 11.66),
    _r1(70.0, "500", 197, 0.02519, 0.81, 0.033352, 0.592150687, 14.77),
)


def inv_c_rh_for_W(W: float) -> float:
    """1/c_RH used in the verified-height regime for a given W."""
    if W <= 31.0:
        return 12.0
    if W <= 35.0:
        return 10.5
    return 9.0


def r1_row(W: float) -> R1Row:
    for row in R1_ROWS:
        if abs(row.W - W) <= 1e-9:
            return row
    raise KeyError(f"no R1 row with W={W}")


# ---------------------------------------------------------------------------
# Table 4: K1 rows (sigma >= 1); beta is pinned to d/(c1+d).
# The ee/500 rows are the verified-height regime with the stated c_RH;
# the H row is the unconditional regime with c0 = 1/21.233.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class K1Row:
    t0_key: str
    t0: float
    K1: float
    inv_c_rh: float
    alpha1: float
    d: float
    sigma1: float
    eps: float


K1_ROWS = (
    K1Row("ee", E_E, 238.4, 16.7, 0.2188, 0.00946, 7.89, 0.1745),
    K1Row("500", 500.0, 113.3, 8.3, 0.1938, 0.0201, 11.26, 0.4098),
    K1Row("H", float(HEIGHT_H), 110.6, 21.233, 0.0240, 0.0295, 8.87, 0.8815),
)


def k1_row(key: str) -> K1Row:
    key = canonical_key(key)
    for row in K1_ROWS:
        if row.t0_key == key:
            return row
    raise KeyError(key)


def best_k1_for(t0: float) -> K1Row:
    """Smallest published K1 valid for t >= t0."""
    best = None
    for row in K1_ROWS:
        if row.t0 <= float(t0) * (1 + 1e-12) and (best is None or row.K1 < best.K1):
            best = row
    if best is None:
        raise KeyError(f"no K1 row valid at t0={t0}")
    return best


# ---------------------------------------------------------------------------
# Table 5: (W, R2) rows.  Left block: widest range (t0 as listed,
# d1 = 0.0031, sigma1 as listed).  Right block: t0 = 500 with
# d1 = 0.0067, sigma1 = 12.35.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class R2Row:
    W: float
    t0_key: str
    t0: float
    R2: float
    sigma1: float
    d1: float


R2_D1_LEFT = 0.0031
R2_D1_RIGHT = 0.0067
R2_SIGMA1_RIGHT = 12.35

_R2_LEFT = (
    (21.24, "ee", 44910, 6.52),
    (22.0, "ee", 23227, 6.52),
    (23.0, "ee", 21453, 6.52),
    (24.0, "18", 13349, 7.14),
    (25.0, "24", 9526, 6.94),
    (26.0, "33", 7332, 8.13),
    (27.0, "45", 5922, 8.39),
)

_R2_RIGHT = (
    (21.24, 14978),
    (22.0, 3438),
    (23.0, 2494),
    (24.0, 2018),
    (25.0, 1731),
    (26.0, 1532),
    (27.0, 1382),
)

R2_ROWS = tuple(
    [R2Row(W, k, resolve_t0(k), R2, s1, R2_D1_LEFT) for (W, k, R2, s1) in _R2_LEFT]
    + [R2Row(W, "500", 500.0, R2, R2_SIGMA1_RIGHT, R2_D1_RIGHT) for (W, R2) in _R2_RIGHT]
)


def r2_row(W: float, t0_key: str) -> R2Row:
    t0_key = canonical_key(t0_key)
    for row in R2_ROWS:
        if abs(row.W - W) <= 1e-9 and row.t0_key == t0_key:
            return row
    raise KeyError(f"no R2 row with W={W}, t0={t0_key}")


# ---------------------------------------------------------------------------
# Table 6: K2 rows (sigma >= 1).
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class K2Row:
    t0_key: str
    t0: float
    K2: float
    d1: float
    sigma1: float


K2_ROWS = (
    K2Row("ee", E_E, 202.3, 0.0032, 6.64),
    K2Row("500", 500.0, 107.7, 0.0067, 9.80),
    K2Row("H", float(HEIGHT_H), 103.5, 0.0068, 9.77),
)


def k2_row(key: str) -> K2Row:
    key = canonical_key(key)
    for row in K2_ROWS:
        if row.t0_key == key:
            return row
    raise KeyError(key)


#: Constant of the unconditional zero-free region
#: sigma > 1 - loglog t/(21.233 log t).
C0_ZERO_FREE = 1.0 / 21.233

#: Upper limit for any verified-height replacement constant.
C_RH_MAX = 1.0 / 8.22

#: |1/zeta(1+it)| <= 2.079 log t on 2 <= t <= 500 (imported range check).
SMALL_T_RECIP_COEFF = 2.079
