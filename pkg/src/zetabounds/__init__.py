"""Explicit log t/loglog t bounds for |zeta'/zeta| and |1/zeta| near the
1-line: high-precision evaluation with error radii, the full constant
chain, constrained optimization of the free parameters, and numerical
certification of the supporting inequalities.
"""

from .balls import (
    BallValue,
    PrecisionContext,
    DomainError,
    PoleError,
    IndeterminateError,
    ConstraintError,
    HEIGHT_H,
)
from .zeta import (
    ComplexPoint,
    zeta_real,
    zeta_complex,
    zeta_prime,
    zeta_and_prime,
    log_deriv,
    eta_oracle,
)
from .formulas import (
    GrowthParams,
    MainLemmaParams,
    WSchedule,
    BoundCertificate,
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
)
from .optimize import (
    SearchSpace,
    OptimizationResult,
    InfeasibleError,
    optimize,
    reproduce_table,
    build_reference_certificate,
)
from .verify import (
    RegionCheck,
    TrigPoly,
    check_lemma5_small_t,
    check_lemma5_large_t,
    check_lemma8_small_t,
    check_corollary4_range,
    trig_criteria,
    trig_search,
    spot_check,
)

__version__ = "0.1.0"
