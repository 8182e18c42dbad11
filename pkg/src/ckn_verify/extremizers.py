"""The explicit equality families, built as profiles with analytic derivatives.

Radial factors are assembled in log space (single exp of a summed exponent)
so that power-times-stretched-exponential tails underflow cleanly to zero
instead of producing 0*inf at extreme probe radii.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .constants import ParamPoint, Region, classify_region, extremizer_exponent
from .errors import FamilyError
from .functionals import ScalarProfile, VectorProfileRadialAligned
from .specfun import kummer_1f1_values

__all__ = [
    "Family",
    "ExtremizerSpec",
    "DecayReport",
    "build_t1",
    "build_t2_radial",
    "build_t2_kummer",
    "build_cc",
    "build_profile",
    "decay_check",
]


class Family(Enum):
    T1_CASE1 = "T1_CASE1"
    T1_CASE2 = "T1_CASE2"
    T2_RADIAL = "T2_RADIAL"
    T2_KUMMER = "T2_KUMMER"
    CC_REGION_A = "CC_REGION_A"
    CC_REGION_B = "CC_REGION_B"


@dataclass(frozen=True)
class ExtremizerSpec:
    """Which family to build, its scalar parameter, amplitude, and degree."""

    family: Family
    beta_or_t: float = 1.0
    gamma: float = 1.0
    k: int = 0  # harmonic degree, nonradial second-order family only


@dataclass(frozen=True)
class DecayReport:
    """Outcome of the class-membership probes; details hold probe values."""

    ok: bool
    details: dict

    def __bool__(self) -> bool:
        return self.ok


def build_t1(p: ParamPoint, beta: float, case: int, gamma: float = 1.0
             ) -> VectorProfileRadialAligned:
    """Curl-free family h(r) = gamma r^q exp(-beta/(a-b+1) r^(a-b+1)).

    case 1 takes the + exponent branch and needs a-b+1 > 0, beta > 0;
    case 2 the - branch with both signs flipped.
    """
    m = p.a - p.b + 1.0
    if case == 1:
        if not (m > 0.0 and beta > 0.0):
            raise FamilyError(
                f"case 1 needs a-b+1 > 0 and beta > 0, got a-b+1={m:g}, beta={beta:g}"
            )
        q = extremizer_exponent(p.N, p.a, "+")
    elif case == 2:
        if not (m < 0.0 and beta < 0.0):
            raise FamilyError(
                f"case 2 needs a-b+1 < 0 and beta < 0, got a-b+1={m:g}, beta={beta:g}"
            )
        q = extremizer_exponent(p.N, p.a, "-")
    else:
        raise FamilyError(f"case must be 1 or 2, got {case!r}")
    c = beta / m

    def h(r):
        r = np.asarray(r, dtype=float)
        return gamma * np.exp(q * np.log(r) - c * r ** m)

    def h_prime(r):
        r = np.asarray(r, dtype=float)
        return h(r) * (q / r - beta * r ** (m - 1.0))

    return VectorProfileRadialAligned(h=h, h_prime=h_prime)


def build_t2_radial(N: int, a: float, beta: float, gamma: float = 1.0) -> ScalarProfile:
    """Radial second-order family f(r) = gamma exp(-beta r^(2(1+a)))."""
    if a == -1.0:
        raise FamilyError("a = -1 degenerates the exponent 2(1+a)")
    # e^{-beta r^m} must decay at the end where r^m blows up, so beta > 0
    # for either sign of m = 2(1+a)
    if beta <= 0.0:
        raise FamilyError(
            f"decay needs beta > 0, got beta={beta:g} with exponent "
            f"2(1+a)={2.0 * (1.0 + a):g}"
        )
    m = 2.0 * (1.0 + a)

    def f(r):
        r = np.asarray(r, dtype=float)
        return gamma * np.exp(-beta * r ** m)

    def f_prime(r):
        r = np.asarray(r, dtype=float)
        return -beta * m * r ** (m - 1.0) * f(r)

    def f_double_prime(r):
        r = np.asarray(r, dtype=float)
        return f(r) * ((beta * m * r ** (m - 1.0)) ** 2
                       - beta * m * (m - 1.0) * r ** (m - 2.0))

    return ScalarProfile(f=f, f_prime=f_prime, f_double_prime=f_double_prime, k=0)


def build_t2_kummer(N: int, a: float, k: int, t: float, gamma: float = 1.0
                    ) -> ScalarProfile:
    """Nonradial second-order family r^alpha 1F1(A;B;-t/(2a+2) r^(2a+2)) Y_k.

    alpha solves alpha(alpha+N-2) = k(N+k-2) on the branch selected by
    sgn(a+1); the argument scale and the sign of t are pinned by the root
    conditions t/(2a+2) > 0 and sgn t = sgn(N+2+4a).
    """
    if N < 2 or int(N) != N:
        raise FamilyError(f"need integer N >= 2, got {N}")
    if k < 1 or int(k) != k:
        raise FamilyError(f"nonradial family needs integer k >= 1, got {k}")
    if a == -1.0:
        raise FamilyError("a = -1 degenerates the argument power 2a+2")
    if not (a + 1.0 > 0.0 or N + 2.0 * a < 0.0):
        raise FamilyError(
            f"needs a+1 > 0 or N+2a < 0, got a+1={a + 1.0:g}, N+2a={N + 2.0 * a:g}"
        )
    if t / (2.0 * a + 2.0) <= 0.0:
        raise FamilyError(f"needs t/(2a+2) > 0, got t={t:g}, 2a+2={2 * a + 2:g}")
    if math.copysign(1.0, t) != math.copysign(1.0, N + 2.0 + 4.0 * a) or N + 2.0 + 4.0 * a == 0.0:
        raise FamilyError(
            f"root sign condition sgn t = sgn(N+2+4a) fails: t={t:g}, "
            f"N+2+4a={N + 2.0 + 4.0 * a:g}"
        )
    lam = -float(k * (N + k - 2))
    alpha = (2.0 - N + math.copysign(1.0, a + 1.0)
             * math.sqrt((N - 2.0) ** 2 - 4.0 * lam)) / 2.0
    m = 2.0 * a + 2.0
    A = (alpha + N + 2.0 * a) / m
    B = (2.0 * alpha + 2.0 * a + N) / m
    c = t / m

    dA = A / B                       # 1F1' prefactor
    ddA = dA * (A + 1.0) / (B + 1.0)  # 1F1'' prefactor

    def f(r):
        r = np.asarray(r, dtype=float)
        z = -c * r ** m
        return gamma * r ** alpha * kummer_1f1_values(A, B, z)

    def f_prime(r):
        r = np.asarray(r, dtype=float)
        z = -c * r ** m
        F = kummer_1f1_values(A, B, z)
        F1 = dA * kummer_1f1_values(A + 1.0, B + 1.0, z)
        zp = -c * m * r ** (m - 1.0)
        return gamma * (alpha * r ** (alpha - 1.0) * F + r ** alpha * F1 * zp)

    def f_double_prime(r):
        r = np.asarray(r, dtype=float)
        z = -c * r ** m
        F = kummer_1f1_values(A, B, z)
        F1 = dA * kummer_1f1_values(A + 1.0, B + 1.0, z)
        F2 = ddA * kummer_1f1_values(A + 2.0, B + 2.0, z)
        zp = -c * m * r ** (m - 1.0)
        zpp = -c * m * (m - 1.0) * r ** (m - 2.0)
        return gamma * (alpha * (alpha - 1.0) * r ** (alpha - 2.0) * F
                        + 2.0 * alpha * r ** (alpha - 1.0) * F1 * zp
                        + r ** alpha * (F2 * zp ** 2 + F1 * zpp))

    return ScalarProfile(f=f, f_prime=f_prime, f_double_prime=f_double_prime, k=int(k))


def build_cc(p: ParamPoint, t: float, gamma: float = 1.0) -> ScalarProfile:
    """Scalar first-order extremizers by region; refuses the a = b+1 line."""
    region = classify_region(p)
    if region is Region.LINE:
        raise FamilyError("best constant on the line a = b+1 is not attained")
    w = p.b + 1.0 - p.a
    need_neg = region in (Region.A1, Region.B2)
    if need_neg and t >= 0.0:
        raise FamilyError(f"region {region.value} needs t < 0, got t={t:g}")
    if not need_neg and t <= 0.0:
        raise FamilyError(f"region {region.value} needs t > 0, got t={t:g}")

    def E(r):
        return np.exp(t / w * r ** w)

    if region in (Region.A1, Region.A2):
        def f(r):
            r = np.asarray(r, dtype=float)
            return gamma * E(r)

        def f_prime(r):
            r = np.asarray(r, dtype=float)
            return gamma * t * r ** (w - 1.0) * E(r)

        def f_double_prime(r):
            r = np.asarray(r, dtype=float)
            return gamma * E(r) * (t * (w - 1.0) * r ** (w - 2.0)
                                   + t * t * r ** (2.0 * w - 2.0))
    else:
        pw = 2.0 * (p.b + 1.0) - p.N

        def f(r):
            r = np.asarray(r, dtype=float)
            return gamma * np.exp(pw * np.log(r) + t / w * r ** w)

        def f_prime(r):
            r = np.asarray(r, dtype=float)
            return gamma * E(r) * (pw * r ** (pw - 1.0) + t * r ** (pw + w - 1.0))

        def f_double_prime(r):
            r = np.asarray(r, dtype=float)
            return gamma * E(r) * (pw * (pw - 1.0) * r ** (pw - 2.0)
                                   + t * (2.0 * pw + w - 1.0) * r ** (pw + w - 2.0)
                                   + t * t * r ** (pw + 2.0 * w - 2.0))

    return ScalarProfile(f=f, f_prime=f_prime, f_double_prime=f_double_prime, k=0)


def build_profile(spec: ExtremizerSpec, p: ParamPoint):
    """Dispatch an ExtremizerSpec to its constructor, validating region fit."""
    fam = spec.family
    if fam is Family.T1_CASE1:
        return build_t1(p, spec.beta_or_t, 1, spec.gamma)
    if fam is Family.T1_CASE2:
        return build_t1(p, spec.beta_or_t, 2, spec.gamma)
    if fam is Family.T2_RADIAL:
        # attainment needs a+1 and N+2+4a on the same strict side of zero
        lo = min(p.a + 1.0, p.N + 2.0 + 4.0 * p.a)
        hi = max(p.a + 1.0, p.N + 2.0 + 4.0 * p.a)
        if not (lo > 0.0 or hi < 0.0):
            raise FamilyError(
                f"equality not attained: min(a+1, N+2+4a)={lo:g}, max={hi:g}")
        return build_t2_radial(p.N, p.a, spec.beta_or_t, spec.gamma)
    if fam is Family.T2_KUMMER:
        return build_t2_kummer(p.N, p.a, spec.k, spec.beta_or_t, spec.gamma)
    region = classify_region(p)
    if region is Region.LINE and fam in (Family.CC_REGION_A, Family.CC_REGION_B):
        raise FamilyError("best constant on the line a = b+1 is not attained")
    if fam is Family.CC_REGION_A:
        if region not in (Region.A1, Region.A2):
            raise FamilyError(f"(N,a,b)=({p.N},{p.a:g},{p.b:g}) lies in {region.value}")
        return build_cc(p, spec.beta_or_t, spec.gamma)
    if fam is Family.CC_REGION_B:
        if region not in (Region.B1, Region.B2):
            raise FamilyError(f"(N,a,b)=({p.N},{p.a:g},{p.b:g}) lies in {region.value}")
        return build_cc(p, spec.beta_or_t, spec.gamma)
    raise FamilyError(f"unknown family {fam!r}")


_PROBES = {"zero": (1e-4, 1e-6), "inf": (1e4, 1e6)}
_DECAY_REL = 1e-8


def _at(fn, r: float) -> float:
    # profile callables may hand back 0-d or 1-element arrays
    return float(np.asarray(fn(r)).reshape(-1)[0])


def decay_check(profile, p: ParamPoint, kind: str) -> DecayReport:
    """Probe the class-membership limits at fixed radii.

    Each limit expression must decrease toward its end and sit below 1e-8
    of its r=1 value at the outermost probe.  Returns a report, never raises
    for failing profiles.
    """
    if kind == "X_ab":
        if not hasattr(profile, "h"):
            raise ValueError("X_ab check needs a vector profile")
        exprs = (
            ("a_weighted_field", lambda r: r ** (p.N / 2.0 - p.a) * abs(_at(profile.h, r))),
            ("b_weighted_field", lambda r: r ** (p.N / 2.0 - p.b + 1.0) * abs(_at(profile.h, r))),
        )
    elif kind == "Y_a":
        if hasattr(profile, "h"):
            raise ValueError("Y_a check needs a scalar profile")
        exprs = (
            ("boundary_u", lambda r: r ** (p.N - 1.0) * _at(profile.f, r) ** 2),
            ("boundary_du", lambda r: r ** float(p.N) * _at(profile.f_prime, r) ** 2),
            ("boundary_u_weighted",
             lambda r: r ** (2.0 * p.a + p.N) * _at(profile.f, r) ** 2),
        )
    else:
        raise ValueError(f"kind must be 'X_ab' or 'Y_a', got {kind!r}")

    ok = True
    details = {}
    for name, fn in exprs:
        try:
            ref = fn(1.0)
        except Exception:
            ref = math.nan
        thr = _DECAY_REL * ref
        for end, (near, far) in _PROBES.items():
            try:
                v_near, v_far = fn(near), fn(far)
            except Exception:
                v_near = v_far = math.nan
            good = (math.isfinite(v_near) and math.isfinite(v_far)
                    and v_far <= v_near and v_far <= thr)
            details[f"{name}@{end}"] = v_far
            ok = ok and good
    return DecayReport(ok=ok, details=details)
