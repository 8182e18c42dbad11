"""Verification engine: quotients, quadratic identities, residuals, reports.

The second-order machinery follows the expanding-the-square route: for a
profile u and parameter t, the squared combination integrates to
t^2*right - (N+2+4a)*t*mid + left, the minimizing t is a ratio of the
triple's entries, and extremizers drive both the pointwise residual and the
discriminant to zero.  First-order families get the analogous treatment on
the log line, where the equality case is a linear first-order ODE.

Windows for squared-combination integrals are detected from a sum of term
magnitudes rather than the (cancelling) combination itself; the roundoff
floor of a near-zero integrand then tracks the detected mass and cannot trip
the tail-decay gate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .constants import (
    ParamPoint,
    Region,
    classify_region,
    curlfree_ckn_constant,
    scalar_ckn_constant,
    second_order_constant,
)
from .errors import (
    FamilyError,
    KummerConvergenceError,
    QuadratureError,
    TailDecayError,
)
from .extremizers import ExtremizerSpec, Family, build_profile, decay_check
from .functionals import (
    FunctionalTriple,
    ScalarProfile,
    curlfree_triple,
    curlfree_triple_logpath,
    scalar_ckn_triple,
    second_order_triple,
)
from .quadrature import (
    DEFAULT_SPEC,
    QuadratureSpec,
    detect_window,
    integrate_log,
    integrate_window,
)
from .specfun import unit_sphere_area

__all__ = [
    "ReportTolerances",
    "VerificationReport",
    "rayleigh_quotient",
    "quadratic_identity_check",
    "optimal_t",
    "pde_residual",
    "ode_residual",
    "spherical_quadratic_min",
    "minimize_quotient_over_beta",
    "run_verification",
]

_TINY = 1e-300
_GRID_INSET = 0.15   # fraction of the detected window trimmed per side
_GRID_POINTS = 48


@dataclass(frozen=True)
class ReportTolerances:
    rel_error: float = 1e-7
    quad_identity: float = 1e-8
    pde: float = 1e-7


@dataclass(frozen=True)
class VerificationReport:
    family: Family
    params: ParamPoint
    k: int
    beta_or_t: float
    quotient: float
    sharp_constant_sq: float
    rel_error: float
    quad_identity_residual: float
    pde_residual: float
    decay_ok: bool
    passed: bool
    error: str = ""


def rayleigh_quotient(tr: FunctionalTriple) -> float:
    """left*right/mid^2, the quantity whose infimum is the sharp constant."""
    if tr.mid == 0.0:
        raise ZeroDivisionError("middle term vanishes")
    return tr.left * tr.right / (tr.mid * tr.mid)


def _second_order_terms(u: ScalarProfile, N: int, a: float, t: float):
    """Closures for the three pieces of the squared combination at radius r."""
    ck = float(u.angular_eigenvalue(N))
    s = 2.0 * t * (N / 2.0 + a)

    def terms(r):
        r = np.asarray(r, dtype=float)
        f, fp, fpp = u.f(r), u.f_prime(r), u.f_double_prime(r)
        lap = fpp + (N - 1.0) * fp / r - ck * f / (r * r)
        return r ** (-a) * lap, t * r ** (a + 1.0) * fp, s * r ** a * f

    return terms


def _mass_window(mag_log, spec: QuadratureSpec):
    found = detect_window(mag_log, spec)
    if found is None:
        raise QuadratureError("profile has no detectable mass in the scan range")
    t_lo, t_hi, peak = found
    # the decay gate belongs on the majorant: the combination integrated over
    # this window is cancellation noise at a root and carries no tail signal
    ends = np.abs(np.asarray(mag_log(np.array([t_lo, t_hi])), dtype=float))
    if float(ends.max()) > 1e-3 * peak:
        raise TailDecayError(
            f"term-magnitude integrand has not decayed at the window ends "
            f"(endpoint/peak = {float(ends.max()) / peak:.2e}); divergent "
            "integral or profile outside the admissible class")
    return t_lo, t_hi


def quadratic_identity_check(u: ScalarProfile, N: int, a: float, t: float,
                             spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """Residual of the expanding-the-square identity at parameter t.

    Direct side: one radial quadrature of the squared three-term combination.
    Expanded side: t^2*right - (N+2+4a)*t*mid + left from the triple.  The
    difference is normalized by 1 + the sum of the expanded side's term
    magnitudes, since the expanded side itself cancels at the double root.
    """
    terms = _second_order_terms(u, N, a, t)
    omega = unit_sphere_area(N)

    def mag_log(tt):
        r = np.exp(np.asarray(tt, dtype=float))
        g1, g2, g3 = terms(r)
        return (np.abs(g1) + np.abs(g2) + np.abs(g3)) ** 2 * r ** N

    t_lo, t_hi = _mass_window(mag_log, spec)

    def combo_log(tt):
        r = np.exp(np.asarray(tt, dtype=float))
        g1, g2, g3 = terms(r)
        return (g1 + g2 + g3) ** 2 * r ** N

    direct = omega * integrate_window(combo_log, t_lo, t_hi, spec)
    tr = second_order_triple(u, N, a, spec)
    coeff = (N + 2.0 + 4.0 * a) * t
    expanded = t * t * tr.right - coeff * tr.mid + tr.left
    scale = t * t * tr.right + abs(coeff) * tr.mid + tr.left
    return abs(direct - expanded) / (1.0 + scale)


def optimal_t(u: ScalarProfile, N: int, a: float,
              spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """Minimizing t of the quadratic, (N+2+4a)/2 * mid/right."""
    tr = second_order_triple(u, N, a, spec)
    if tr.right == 0.0:
        raise ZeroDivisionError("right factor vanishes")
    return (N + 2.0 + 4.0 * a) / 2.0 * tr.mid / tr.right


def _max_ratio(num, term_list) -> float:
    scale = np.maximum.reduce([np.abs(g) for g in term_list]) + _TINY
    return float(np.max(np.abs(num) / scale))


def pde_residual(u: ScalarProfile, N: int, a: float, t: float, grid) -> float:
    """Max over the grid of |three-term combination| / max term magnitude."""
    r = np.asarray(grid, dtype=float)
    g1, g2, g3 = _second_order_terms(u, N, a, t)(r)
    return _max_ratio(g1 + g2 + g3, (g1, g2, g3))


def ode_residual(u: ScalarProfile, N: int, a: float, t: float, grid) -> float:
    """Same combination on the radial factor alone (the r^a-scaled form)."""
    r = np.asarray(grid, dtype=float)
    ck = float(u.angular_eigenvalue(N))
    s = 2.0 * t * (N / 2.0 + a)
    f, fp, fpp = u.f(r), u.f_prime(r), u.f_double_prime(r)
    g1 = fpp
    g2 = ((N - 1.0) / r + t * r ** (2.0 * a + 1.0)) * fp
    g3 = (-ck / (r * r) + s * r ** (2.0 * a)) * f
    return _max_ratio(g1 + g2 + g3, (g1, g2, g3))


def spherical_quadratic_min(N: int, lam: float, K_max: int = 200):
    """Brute-force minimum of mu^2 + (lam^2-4lam-2N+4)*mu over mu=kappa(N+kappa-2).

    Returns (min_value, argmin_kappa).  Errors if the minimum sits at K_max,
    since then the window may have clipped the true minimizer.
    """
    if N < 2:
        raise ValueError(f"need N >= 2, got {N}")
    if K_max < 10:
        raise ValueError(f"need K_max >= 10, got {K_max}")
    kappa = np.arange(1, K_max + 1, dtype=float)
    mu = kappa * (N + kappa - 2.0)
    q = lam * lam - 4.0 * lam - 2.0 * N + 4.0
    g = mu * mu + q * mu
    i = int(np.argmin(g))
    if i == K_max - 1:
        raise ValueError(
            f"minimum at the window edge kappa={K_max}; increase K_max")
    return float(g[i]), int(kappa[i])


def _family_triple(es: ExtremizerSpec, p: ParamPoint,
                   spec: QuadratureSpec) -> FunctionalTriple:
    profile = build_profile(es, p)
    if es.family in (Family.T1_CASE1, Family.T1_CASE2):
        return curlfree_triple(profile, p, spec)
    if es.family in (Family.T2_RADIAL, Family.T2_KUMMER):
        return second_order_triple(profile, p.N, p.a, spec)
    return scalar_ckn_triple(profile, p, spec)


_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def minimize_quotient_over_beta(family, p: ParamPoint, beta_window,
                                spec: QuadratureSpec = DEFAULT_SPEC):
    """Golden-section minimization of the quotient over the family parameter.

    family is an ExtremizerSpec template (beta_or_t is replaced per probe) or
    a callable beta -> quotient.  Returns (beta_star, q_star).  Raises if an
    original window endpoint beats the interior minimum, which means the
    window did not bracket one; a flat quotient (the dilation-invariant
    families) converges to an interior point and is not an error.
    """
    lo, hi = float(beta_window[0]), float(beta_window[1])
    if not lo < hi:
        raise ValueError(f"empty window [{lo:g}, {hi:g}]")
    if callable(family):
        fn = family
    else:
        def fn(beta):
            return rayleigh_quotient(
                _family_triple(replace(family, beta_or_t=beta), p, spec))
    f_lo, f_hi = fn(lo), fn(hi)
    width0 = hi - lo
    a_, b_ = lo, hi
    x1 = b_ - _INVPHI * (b_ - a_)
    x2 = a_ + _INVPHI * (b_ - a_)
    f1, f2 = fn(x1), fn(x2)
    while b_ - a_ > 1e-6 * width0:
        if f1 <= f2:
            b_, x2, f2 = x2, x1, f1
            x1 = b_ - _INVPHI * (b_ - a_)
            f1 = fn(x1)
        else:
            a_, x1, f1 = x1, x2, f2
            x2 = a_ + _INVPHI * (b_ - a_)
            f2 = fn(x2)
    beta_star, q_star = (x1, f1) if f1 <= f2 else (x2, f2)
    if min(f_lo, f_hi) < q_star - 1e-9 * (1.0 + abs(q_star)):
        raise ValueError(
            f"no interior minimum: endpoint value {min(f_lo, f_hi):.12g} "
            f"beats interior {q_star:.12g}")
    return beta_star, q_star


def _inset_grid(t_lo: float, t_hi: float) -> np.ndarray:
    pad = _GRID_INSET * (t_hi - t_lo)
    return np.exp(np.linspace(t_lo + pad, t_hi - pad, _GRID_POINTS))


def _first_order_residuals(vfun, vpfun, alpha_v: float, m: float,
                           logt: FunctionalTriple, N: int,
                           spec: QuadratureSpec):
    """Identity residual and ODE residual for a first-order log-line family.

    The combination is v' + alpha_v*v + beta*e^{mt}*v with beta at the
    quadratic's root; its square integrates to
    left + beta^2*right + (2*alpha_v - m)*beta*mid.
    """
    beta = (m / 2.0 - alpha_v) * logt.mid / logt.right
    omega = unit_sphere_area(N)

    def pieces(tt):
        tt = np.asarray(tt, dtype=float)
        v, vp = vfun(tt), vpfun(tt)
        return vp, alpha_v * v, beta * np.exp(m * tt) * v

    def mag_sq(tt):
        g1, g2, g3 = pieces(tt)
        return (np.abs(g1) + np.abs(g2) + np.abs(g3)) ** 2

    def combo_sq(tt):
        g1, g2, g3 = pieces(tt)
        return (g1 + g2 + g3) ** 2

    t_lo, t_hi = _mass_window(mag_sq, spec)
    direct = omega * integrate_window(combo_sq, t_lo, t_hi, spec)
    cross = (2.0 * alpha_v - m) * beta
    expanded = logt.left + beta * beta * logt.right + cross * logt.mid
    scale = logt.left + beta * beta * logt.right + abs(cross) * logt.mid
    quad_res = abs(direct - expanded) / (1.0 + scale)

    pad = _GRID_INSET * (t_hi - t_lo)
    tg = np.linspace(t_lo + pad, t_hi - pad, _GRID_POINTS)
    g1, g2, g3 = pieces(tg)
    ode_res = _max_ratio(g1 + g2 + g3, (g1, g2, g3))
    return beta, quad_res, ode_res


def _report(es: ExtremizerSpec, p: ParamPoint, quotient: float, c2: float,
            quad_res: float, pde_res: float, decay_ok: bool,
            tol: ReportTolerances) -> VerificationReport:
    rel = abs(quotient / c2 - 1.0)
    passed = (rel <= tol.rel_error and quad_res <= tol.quad_identity
              and pde_res <= tol.pde and decay_ok)
    return VerificationReport(
        family=es.family, params=p, k=es.k, beta_or_t=es.beta_or_t,
        quotient=quotient, sharp_constant_sq=c2, rel_error=rel,
        quad_identity_residual=quad_res, pde_residual=pde_res,
        decay_ok=decay_ok, passed=passed)


def _error_report(es: ExtremizerSpec, p: ParamPoint, msg: str) -> VerificationReport:
    nan = math.nan
    return VerificationReport(
        family=es.family, params=p, k=es.k, beta_or_t=es.beta_or_t,
        quotient=nan, sharp_constant_sq=nan, rel_error=nan,
        quad_identity_residual=nan, pde_residual=nan,
        decay_ok=False, passed=False, error=msg)


def _verify_t1(es: ExtremizerSpec, p: ParamPoint, tol: ReportTolerances,
               spec: QuadratureSpec) -> VerificationReport:
    C = curlfree_ckn_constant(p)
    profile = build_profile(es, p)
    quotient = rayleigh_quotient(curlfree_triple(profile, p, spec))
    logt = curlfree_triple_logpath(profile, p, spec)
    alpha = math.sqrt((1.0 - p.N / 2.0 + p.a) ** 2 + p.N - 1.0)
    alpha_v = -alpha if es.family is Family.T1_CASE1 else alpha
    m = p.a - p.b + 1.0
    e2 = p.N / 2.0 - p.a

    def vfun(tt):
        tt = np.asarray(tt, dtype=float)
        return np.exp(e2 * tt) * profile.h(np.exp(tt))

    def vpfun(tt):
        tt = np.asarray(tt, dtype=float)
        return e2 * vfun(tt) + np.exp((e2 + 1.0) * tt) * profile.h_prime(np.exp(tt))

    _, quad_res, pde_res = _first_order_residuals(
        vfun, vpfun, alpha_v, m, logt, p.N, spec)
    decay = decay_check(profile, p, "X_ab")
    return _report(es, p, quotient, C * C, quad_res, pde_res, decay.ok, tol)


def _t2_grid(u: ScalarProfile, N: int, a: float, t: float,
             spec: QuadratureSpec) -> np.ndarray:
    terms = _second_order_terms(u, N, a, t)

    def mag_log(tt):
        r = np.exp(np.asarray(tt, dtype=float))
        g1, g2, g3 = terms(r)
        return (np.abs(g1) + np.abs(g2) + np.abs(g3)) ** 2 * r ** N

    t_lo, t_hi = _mass_window(mag_log, spec)
    return _inset_grid(t_lo, t_hi)


def _verify_t2(es: ExtremizerSpec, p: ParamPoint, tol: ReportTolerances,
               spec: QuadratureSpec) -> VerificationReport:
    profile = build_profile(es, p)
    triple = second_order_triple(profile, p.N, p.a, spec)
    quotient = rayleigh_quotient(triple)
    c2 = second_order_constant(p.N, p.a)
    if es.family is Family.T2_RADIAL:
        # statement beta maps to the proof's root t = 2(a+1)beta
        t = (p.N + 2.0 + 4.0 * p.a) / 2.0 * triple.mid / triple.right
    else:
        t = es.beta_or_t
    quad_res = quadratic_identity_check(profile, p.N, p.a, t, spec)
    grid = _t2_grid(profile, p.N, p.a, t, spec)
    pde_res = pde_residual(profile, p.N, p.a, t, grid)
    decay = decay_check(profile, p, "Y_a")
    return _report(es, p, quotient, c2, quad_res, pde_res, decay.ok, tol)


_CC_PROBES = {"zero": (1e-4, 1e-6), "inf": (1e4, 1e6)}


def _cc_boundary_ok(profile: ScalarProfile, p: ParamPoint) -> bool:
    """Boundary terms of the log-line integrations by parts.

    w^2 and e^{m t}w^2 must vanish at both ends; the slowest admissible
    profiles decay like a small power of r, so the probe threshold is 1e-3
    relative at four decades out (not the 1e-8 of the exponential-tail
    classes).
    """
    kappa = (p.N - 2.0 - 2.0 * p.b) / 2.0
    m = p.b + 1.0 - p.a

    def w_sq(r):
        return r ** (2.0 * kappa) * float(profile.f(r)) ** 2

    for expr in (w_sq, lambda r: r ** m * w_sq(r)):
        ref = expr(1.0)
        if not math.isfinite(ref):
            return False
        thr = 1e-3 * ref
        for near, far in _CC_PROBES.values():
            v_near, v_far = expr(near), expr(far)
            if not (math.isfinite(v_near) and math.isfinite(v_far)
                    and v_far <= v_near and v_far <= thr):
                return False
    return True


def _verify_cc(es: ExtremizerSpec, p: ParamPoint, tol: ReportTolerances,
               spec: QuadratureSpec) -> VerificationReport:
    region = classify_region(p)
    C = scalar_ckn_constant(p)
    profile = build_profile(es, p)
    quotient = rayleigh_quotient(scalar_ckn_triple(profile, p, spec))
    kappa = (p.N - 2.0 - 2.0 * p.b) / 2.0
    alpha_s = -kappa if region in (Region.A1, Region.A2) else kappa
    m = p.b + 1.0 - p.a
    omega = unit_sphere_area(p.N)

    def wfun(tt):
        tt = np.asarray(tt, dtype=float)
        return np.exp(kappa * tt) * profile.f(np.exp(tt))

    def wpfun(tt):
        tt = np.asarray(tt, dtype=float)
        return kappa * wfun(tt) + np.exp((kappa + 1.0) * tt) * profile.f_prime(np.exp(tt))

    logt = FunctionalTriple(
        left=omega * integrate_log(
            lambda tt: wpfun(tt) ** 2 + kappa * kappa * wfun(tt) ** 2, spec),
        right=omega * integrate_log(
            lambda tt: np.exp(2.0 * m * np.asarray(tt, dtype=float)) * wfun(tt) ** 2,
            spec),
        mid=omega * integrate_log(
            lambda tt: np.exp(m * np.asarray(tt, dtype=float)) * wfun(tt) ** 2,
            spec))
    _, quad_res, pde_res = _first_order_residuals(
        wfun, wpfun, alpha_s, m, logt, p.N, spec)
    return _report(es, p, quotient, C * C, quad_res, pde_res,
                   _cc_boundary_ok(profile, p), tol)


_CATCH = (ValueError, ZeroDivisionError, KummerConvergenceError, QuadratureError)


def run_verification(spec: ExtremizerSpec, p: ParamPoint,
                     tolerances: ReportTolerances | None = None,
                     quadrature: QuadratureSpec = DEFAULT_SPEC) -> VerificationReport:
    """Full verification of one (family, parameter point); never raises for
    parameter-level problems, which come back as error reports instead."""
    tol = tolerances if tolerances is not None else ReportTolerances()
    try:
        fam = spec.family
        if fam in (Family.T1_CASE1, Family.T1_CASE2):
            return _verify_t1(spec, p, tol, quadrature)
        if fam in (Family.T2_RADIAL, Family.T2_KUMMER):
            return _verify_t2(spec, p, tol, quadrature)
        if fam in (Family.CC_REGION_A, Family.CC_REGION_B):
            return _verify_cc(spec, p, tol, quadrature)
        raise FamilyError(f"unknown family {fam!r}")
    except _CATCH as exc:
        return _error_report(spec, p, str(exc))
