"""Weighted integral triples of each inequality instance.

A profile carries analytic radial data; every triple reduces to 1-D radial
integrals because the angular factor is an L2-normalized spherical harmonic,
entering only through its eigenvalue c_k = k(N+k-2).  With that convention
each integral carries exactly one factor of the unit-sphere area.

The curl-free triple has two independent computation paths: the x-space
radial reduction, and the log-variable form in v(t) = e^((2-lam)t) h(e^t)
with lam = 2 - N/2 + a.  For radially aligned fields the two are equal
exactly, which the verify layer uses as a cross-check oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .constants import ParamPoint
from .quadrature import DEFAULT_SPEC, QuadratureSpec, integrate_log, integrate_radial
from .specfun import unit_sphere_area

__all__ = [
    "ScalarProfile",
    "VectorProfileRadialAligned",
    "FunctionalTriple",
    "scalar_ckn_triple",
    "radial_ckn_triple",
    "second_order_triple",
    "curlfree_triple",
    "curlfree_triple_logpath",
    "derivative_consistency_error",
]


@dataclass(frozen=True)
class ScalarProfile:
    """Scalar field u = f(r) Y_k(sigma) with analytic radial derivatives."""

    f: Callable
    f_prime: Callable
    f_double_prime: Callable
    k: int = 0

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 0:
            raise ValueError(f"harmonic degree must be an integer >= 0, got {self.k}")

    def angular_eigenvalue(self, N: int) -> float:
        """Eigenvalue c_k = k(N+k-2) of the spherical Laplacian on degree k."""
        return float(self.k * (N + self.k - 2))


@dataclass(frozen=True)
class VectorProfileRadialAligned:
    """Curl-free field U = h(r) x; curl-free for any differentiable h."""

    h: Callable
    h_prime: Callable


@dataclass(frozen=True)
class FunctionalTriple:
    """The two outer factors and the middle term of one inequality instance."""

    left: float
    right: float
    mid: float

    def __post_init__(self):
        for name in ("left", "right", "mid"):
            v = getattr(self, name)
            if not math.isfinite(v) or v < 0.0:
                raise ValueError(f"triple entry {name}={v} must be finite and >= 0")


def scalar_ckn_triple(
    u: ScalarProfile, p: ParamPoint, spec: QuadratureSpec = DEFAULT_SPEC
) -> FunctionalTriple:
    """Triple of the scalar inequality: full gradient on the left factor."""
    N, a, b = p.N, p.a, p.b
    ck = u.angular_eigenvalue(N)
    om = unit_sphere_area(N)
    if ck:
        def left_int(r):
            return (u.f_prime(r) ** 2 + ck * (u.f(r) / r) ** 2) * r ** (N - 1 - 2 * b)
    else:
        def left_int(r):
            return u.f_prime(r) ** 2 * r ** (N - 1 - 2 * b)
    return FunctionalTriple(
        left=om * integrate_radial(left_int, spec),
        right=om * integrate_radial(lambda r: u.f(r) ** 2 * r ** (N - 1 - 2 * a), spec),
        mid=om * integrate_radial(lambda r: u.f(r) ** 2 * r ** (N - 1 - (a + b + 1)), spec),
    )


def radial_ckn_triple(
    u: ScalarProfile, p: ParamPoint, spec: QuadratureSpec = DEFAULT_SPEC
) -> FunctionalTriple:
    """Refined variant: left factor keeps only the radial derivative."""
    N, a, b = p.N, p.a, p.b
    om = unit_sphere_area(N)
    return FunctionalTriple(
        left=om * integrate_radial(lambda r: u.f_prime(r) ** 2 * r ** (N - 1 - 2 * b), spec),
        right=om * integrate_radial(lambda r: u.f(r) ** 2 * r ** (N - 1 - 2 * a), spec),
        mid=om * integrate_radial(lambda r: u.f(r) ** 2 * r ** (N - 1 - (a + b + 1)), spec),
    )


def second_order_triple(
    u: ScalarProfile, N: int, a: float, spec: QuadratureSpec = DEFAULT_SPEC
) -> FunctionalTriple:
    """Triple of the second-order inequality at weight a.

    left integrates the squared Laplacian against r^(-2a), right the squared
    radial derivative against r^(2a+2), mid is the plain gradient energy.
    """
    ck = u.angular_eigenvalue(N)
    om = unit_sphere_area(N)

    def lap(r):
        out = u.f_double_prime(r) + (N - 1) * u.f_prime(r) / r
        if ck:
            out = out - ck * u.f(r) / r ** 2
        return out

    if ck:
        def mid_int(r):
            return (u.f_prime(r) ** 2 + ck * (u.f(r) / r) ** 2) * r ** (N - 1)
    else:
        def mid_int(r):
            return u.f_prime(r) ** 2 * r ** (N - 1)

    return FunctionalTriple(
        left=om * integrate_radial(lambda r: lap(r) ** 2 * r ** (N - 1 - 2 * a), spec),
        right=om * integrate_radial(
            lambda r: u.f_prime(r) ** 2 * r ** (N - 1 + 2 * a + 2), spec
        ),
        mid=om * integrate_radial(mid_int, spec),
    )


def curlfree_triple(
    U: VectorProfileRadialAligned, p: ParamPoint, spec: QuadratureSpec = DEFAULT_SPEC
) -> FunctionalTriple:
    """x-space triple for U = h(r) x.

    The Frobenius norm of the Jacobian reduces to h'^2 r^2 + 2 h h' r + N h^2,
    assembled here as (h'r + h)^2 + (N-1) h^2 to keep the integrand a sum of
    squares.
    """
    N, a, b = p.N, p.a, p.b
    om = unit_sphere_area(N)

    def grad_int(r):
        h = U.h(r)
        return ((U.h_prime(r) * r + h) ** 2 + (N - 1) * h * h) * r ** (N - 1 - 2 * a)

    return FunctionalTriple(
        left=om * integrate_radial(grad_int, spec),
        right=om * integrate_radial(lambda r: U.h(r) ** 2 * r ** (N + 1 - 2 * b), spec),
        mid=om * integrate_radial(
            lambda r: U.h(r) ** 2 * r ** (N + 1 - (a + b + 1)), spec
        ),
    )


def curlfree_triple_logpath(
    U: VectorProfileRadialAligned, p: ParamPoint, spec: QuadratureSpec = DEFAULT_SPEC
) -> FunctionalTriple:
    """Log-variable route to the same triple, exact for radially aligned fields."""
    N, a, b = p.N, p.a, p.b
    om = unit_sphere_area(N)
    lam = 2.0 - N / 2.0 + a
    # (lam-1)^2 + (N-1) is the full angular+scaling coefficient on v^2
    coeff = (lam - 1.0) ** 2 + (N - 1.0)

    def v(t):
        r = np.exp(t)
        return np.exp((2.0 - lam) * t) * U.h(r)

    def v_t(t):
        r = np.exp(t)
        return (2.0 - lam) * v(t) + np.exp((3.0 - lam) * t) * U.h_prime(r)

    return FunctionalTriple(
        left=om * integrate_log(lambda t: coeff * v(t) ** 2 + v_t(t) ** 2, spec),
        right=om * integrate_log(
            lambda t: np.exp((2 * a - 2 * b + 2) * t) * v(t) ** 2, spec
        ),
        mid=om * integrate_log(
            lambda t: np.exp((a - b + 1) * t) * v(t) ** 2, spec
        ),
    )


def derivative_consistency_error(profile, r_grid=None) -> float:
    """Worst mismatch between stored derivatives and central differences.

    Returns max over the grid of |stored - finite difference| / (1 + |stored|);
    extremizer constructors are expected to stay below 1e-6.
    """
    if r_grid is None:
        r_grid = np.geomspace(0.05, 20.0, 200)
    r = np.asarray(r_grid, dtype=float)
    step = 1e-6 * r
    if hasattr(profile, "h"):
        pairs = ((profile.h, profile.h_prime),)
    else:
        pairs = (
            (profile.f, profile.f_prime),
            (profile.f_prime, profile.f_double_prime),
        )
    worst = 0.0
    for fn, dfn in pairs:
        fd = (fn(r + step) - fn(r - step)) / (2.0 * step)
        exact = dfn(r)
        worst = max(worst, float(np.max(np.abs(fd - exact) / (1.0 + np.abs(exact)))))
    return worst
