"""Numerical verification of sharp weighted CKN-type inequalities.

Evaluates the weighted functional triples of the first-order curl-free and
second-order scalar inequalities on their explicit extremizer families and
certifies equality with the closed-form sharp constants, together with the
quadratic-form identities and pointwise PDE/ODE residuals behind them.
"""

from .constants import (
    ParamPoint,
    Region,
    classify_region,
    curlfree_admissible,
    curlfree_ckn_constant,
    extremizer_exponent,
    reference_constants,
    scalar_ckn_constant,
    second_order_constant,
)
from .errors import (
    FamilyError,
    KummerConvergenceError,
    KummerDomainError,
    QuadratureConvergenceError,
    QuadratureError,
    TailDecayError,
)
from .extremizers import (
    DecayReport,
    ExtremizerSpec,
    Family,
    build_cc,
    build_profile,
    build_t1,
    build_t2_kummer,
    build_t2_radial,
    decay_check,
)
from .functionals import (
    FunctionalTriple,
    ScalarProfile,
    VectorProfileRadialAligned,
    curlfree_triple,
    curlfree_triple_logpath,
    derivative_consistency_error,
    radial_ckn_triple,
    scalar_ckn_triple,
    second_order_triple,
)
from .quadrature import (
    DEFAULT_SPEC,
    QuadratureSpec,
    integrate_log,
    integrate_radial,
    integrate_window,
)
from .specfun import (
    KummerParams,
    backend_kind,
    kummer_1f1,
    kummer_1f1_derivative,
    kummer_asymptotic_negative,
    ln_gamma,
    unit_sphere_area,
)
from .verify import (
    ReportTolerances,
    VerificationReport,
    minimize_quotient_over_beta,
    ode_residual,
    optimal_t,
    pde_residual,
    quadratic_identity_check,
    rayleigh_quotient,
    run_verification,
    spherical_quadratic_min,
)

__version__ = "0.1.0"

__all__ = [
    "ParamPoint", "Region", "classify_region", "curlfree_admissible",
    "curlfree_ckn_constant", "extremizer_exponent", "reference_constants",
    "scalar_ckn_constant", "second_order_constant",
    "FamilyError", "KummerConvergenceError", "KummerDomainError",
    "QuadratureConvergenceError", "QuadratureError", "TailDecayError",
    "DecayReport", "ExtremizerSpec", "Family", "build_cc", "build_profile",
    "build_t1", "build_t2_kummer", "build_t2_radial", "decay_check",
    "FunctionalTriple", "ScalarProfile", "VectorProfileRadialAligned",
    "curlfree_triple", "curlfree_triple_logpath",
    "derivative_consistency_error", "radial_ckn_triple", "scalar_ckn_triple",
    "second_order_triple",
    "DEFAULT_SPEC", "QuadratureSpec", "integrate_log", "integrate_radial",
    "integrate_window",
    "KummerParams", "backend_kind", "kummer_1f1", "kummer_1f1_derivative",
    "kummer_asymptotic_negative", "ln_gamma", "unit_sphere_area",
    "ReportTolerances", "VerificationReport", "minimize_quotient_over_beta",
    "ode_residual", "optimal_t", "pde_residual", "quadratic_identity_check",
    "rayleigh_quotient", "run_verification", "spherical_quadratic_min",
    "__version__",
]
