import math

import numpy as np
import pytest

from ckn_verify import (
    FunctionalTriple,
    ParamPoint,
    Region,
    ScalarProfile,
    VectorProfileRadialAligned,
    build_cc,
    build_t1,
    build_t2_radial,
    classify_region,
    curlfree_triple,
    curlfree_triple_logpath,
    derivative_consistency_error,
    integrate_radial,
    radial_ckn_triple,
    scalar_ckn_constant,
    scalar_ckn_triple,
    second_order_triple,
    unit_sphere_area,
)

from conftest import gamma_tail, poly_exp_profile


def gaussian_profile(beta=1.0):
    return ScalarProfile(
        f=lambda r: np.exp(-beta * np.asarray(r, float) ** 2),
        f_prime=lambda r: -2.0 * beta * np.asarray(r, float)
        * np.exp(-beta * np.asarray(r, float) ** 2),
        f_double_prime=lambda r: (4.0 * beta * beta * np.asarray(r, float) ** 2
                                  - 2.0 * beta)
        * np.exp(-beta * np.asarray(r, float) ** 2),
        k=0,
    )


def exp_profile():
    return ScalarProfile(
        f=lambda r: np.exp(-np.asarray(r, float)),
        f_prime=lambda r: -np.exp(-np.asarray(r, float)),
        f_double_prime=lambda r: np.exp(-np.asarray(r, float)),
        k=0,
    )


def _quotient(tr):
    return tr.left * tr.right / (tr.mid * tr.mid)


# ------------------------------------------------------------------- types

def test_scalar_profile_validation():
    g = gaussian_profile()
    with pytest.raises(ValueError):
        ScalarProfile(f=g.f, f_prime=g.f_prime, f_double_prime=g.f_double_prime,
                      k=-1)
    assert g.angular_eigenvalue(3) == 0.0
    k1 = ScalarProfile(f=g.f, f_prime=g.f_prime,
                       f_double_prime=g.f_double_prime, k=1)
    assert k1.angular_eigenvalue(3) == 2.0
    assert k1.angular_eigenvalue(5) == 4.0


def test_triple_validation():
    with pytest.raises(ValueError):
        FunctionalTriple(left=-1.0, right=1.0, mid=1.0)
    with pytest.raises(ValueError):
        FunctionalTriple(left=1.0, right=math.nan, mid=1.0)
    FunctionalTriple(left=0.0, right=0.0, mid=0.0)


# ------------------------------------------------------------ scalar triple

def test_scalar_triple_hup_gaussian():
    p = ParamPoint(3, -1.0, 0.0)
    tr = scalar_ckn_triple(gaussian_profile(), p)
    om = unit_sphere_area(3)
    # Gamma-integral oracle for each entry
    assert math.isclose(tr.left, om * 4.0 * gamma_tail(4, 2.0, 2.0), rel_tol=1e-10)
    assert math.isclose(tr.right, om * gamma_tail(4, 2.0, 2.0), rel_tol=1e-10)
    assert math.isclose(tr.mid, om * gamma_tail(2, 2.0, 2.0), rel_tol=1e-10)
    assert math.isclose(_quotient(tr), 2.25, rel_tol=1e-10)


def test_scalar_triple_hyup_exponential():
    tr = scalar_ckn_triple(exp_profile(), ParamPoint(3, 0.0, 0.0))
    assert math.isclose(_quotient(tr), 1.0, rel_tol=1e-10)


def test_scalar_triple_homogeneity():
    p = ParamPoint(3, -1.0, 0.0)
    base = scalar_ckn_triple(gaussian_profile(), p)
    g = gaussian_profile()
    scaled_profile = ScalarProfile(
        f=lambda r: 3.0 * g.f(r),
        f_prime=lambda r: 3.0 * g.f_prime(r),
        f_double_prime=lambda r: 3.0 * g.f_double_prime(r),
        k=0)
    scaled = scalar_ckn_triple(scaled_profile, p)
    for x, y in [(scaled.left, base.left), (scaled.right, base.right),
                 (scaled.mid, base.mid)]:
        assert math.isclose(x, 9.0 * y, rel_tol=1e-12)
    assert math.isclose(_quotient(scaled), _quotient(base), rel_tol=1e-12)


# ------------------------------------------------------------ radial triple

def test_radial_triple_matches_scalar_at_k0():
    p = ParamPoint(3, -1.0, 0.0)
    a = scalar_ckn_triple(gaussian_profile(), p)
    b = radial_ckn_triple(gaussian_profile(), p)
    assert math.isclose(a.left, b.left, rel_tol=1e-13)
    assert math.isclose(a.right, b.right, rel_tol=1e-13)
    assert math.isclose(a.mid, b.mid, rel_tol=1e-13)
    assert math.isclose(_quotient(b), 2.25, rel_tol=1e-10)


def test_radial_triple_drops_angular_energy():
    u = poly_exp_profile(1, (1.0,), 1.0, 2.0)  # r e^{-r^2}, degree 1
    p = ParamPoint(3, 0.0, 0.0)
    full = scalar_ckn_triple(u, p)
    rad = radial_ckn_triple(u, p)
    assert rad.left < full.left
    assert math.isclose(rad.right, full.right, rel_tol=1e-12)
    assert math.isclose(rad.mid, full.mid, rel_tol=1e-12)


# ------------------------------------------------------- second-order triple

def test_second_order_gaussian_values():
    assert math.isclose(_quotient(second_order_triple(gaussian_profile(), 3, 0.0)),
                        6.25, rel_tol=1e-10)
    assert math.isclose(_quotient(second_order_triple(gaussian_profile(), 2, 0.0)),
                        4.0, rel_tol=1e-10)


def test_second_order_weighted_family_at_half():
    # the a=-1/2 member of the family is e^{-beta r}; quotient (N+2+4a)^2/4
    u = build_t2_radial(5, -0.5, 1.0)
    assert math.isclose(_quotient(second_order_triple(u, 5, -0.5)), 6.25,
                        rel_tol=1e-10)


def test_second_order_weighted_triple_on_hyup_profile():
    # u = (1+r)e^{-r} in the weighted triple at (5,-1/2).  Gamma-integral
    # oracle: left = 10.3125 w, right = 19.6875 w, mid = 5.625 w, so the
    # quotient is 77/12 (not the sharp 25/4; this u extremizes a different,
    # unweighted functional, checked in the next test).
    u = poly_exp_profile(0, (1.0,), 1.0, 1.0)
    up = poly_exp_profile(1, (1.0,), 1.0, 1.0)
    prof = ScalarProfile(
        f=lambda r: u.f(r) + up.f(r),
        f_prime=lambda r: u.f_prime(r) + up.f_prime(r),
        f_double_prime=lambda r: u.f_double_prime(r) + up.f_double_prime(r),
        k=0)
    om = unit_sphere_area(5)
    tr = second_order_triple(prof, 5, -0.5)
    assert math.isclose(tr.left, om * 10.3125, rel_tol=1e-10)
    assert math.isclose(tr.right, om * 19.6875, rel_tol=1e-10)
    assert math.isclose(tr.mid, om * 5.625, rel_tol=1e-10)
    assert math.isclose(_quotient(tr), 77.0 / 12.0, rel_tol=1e-10)


def test_plain_laplacian_functional_on_hyup_profile():
    # the unweighted product int|lap u|^2 int|grad u|^2 >= ((N+1)^2/4)(int|grad u|^2/|x|)^2
    # is attained by (1+beta r)e^{-beta r} at N=5; assembled from raw quadratures
    N = 5

    def f_prime(r):
        return -r * np.exp(-r)

    def lap(r):
        return (r - N) * np.exp(-r)

    left = integrate_radial(lambda r: lap(r) ** 2 * r ** (N - 1))
    right = integrate_radial(lambda r: f_prime(r) ** 2 * r ** (N - 1))
    mid = integrate_radial(lambda r: f_prime(r) ** 2 * r ** (N - 2))
    assert math.isclose(left * right / mid ** 2, 9.0, rel_tol=1e-10)


# ---------------------------------------------------------- curl-free triple

def test_curlfree_triple_corollary_values():
    h = VectorProfileRadialAligned(
        h=lambda r: np.exp(-0.5 * np.asarray(r, float) ** 2),
        h_prime=lambda r: -np.asarray(r, float)
        * np.exp(-0.5 * np.asarray(r, float) ** 2))
    tr = curlfree_triple(h, ParamPoint(5, 0.0, -1.0))
    assert math.isclose(_quotient(tr), 12.25, rel_tol=1e-10)

    h = VectorProfileRadialAligned(
        h=lambda r: np.exp(-np.asarray(r, float)),
        h_prime=lambda r: -np.exp(-np.asarray(r, float)))
    tr = curlfree_triple(h, ParamPoint(5, 0.0, 0.0))
    assert math.isclose(_quotient(tr), 9.0, rel_tol=1e-10)


def test_frobenius_reduction_vs_fd_jacobian(rng):
    # |grad U|^2 for U = h(r) x against a componentwise finite-difference
    # Jacobian at random points in R^5
    N = 5
    h = lambda r: np.exp(-0.5 * r * r)
    hp = lambda r: -r * np.exp(-0.5 * r * r)
    eps = 1e-6
    for _ in range(20):
        x = rng.uniform(-1.5, 1.5, size=N)
        r = float(np.linalg.norm(x))
        if r < 0.3:
            x *= 0.5 / r
            r = float(np.linalg.norm(x))
        frob = 0.0
        for i in range(N):
            for j in range(N):
                xp = x.copy()
                xm = x.copy()
                xp[j] += eps
                xm[j] -= eps
                up = h(np.linalg.norm(xp)) * xp[i]
                um = h(np.linalg.norm(xm)) * xm[i]
                frob += ((up - um) / (2.0 * eps)) ** 2
        formula = hp(r) ** 2 * r * r + 2.0 * h(r) * hp(r) * r + N * h(r) ** 2
        assert math.isclose(frob, formula, rel_tol=1e-6)


def test_logpath_matches_xspace():
    p = ParamPoint(5, 0.0, -1.0)
    U = build_t1(p, 1.0, 1)
    a = curlfree_triple(U, p)
    b = curlfree_triple_logpath(U, p)
    assert math.isclose(a.left, b.left, rel_tol=1e-9)
    assert math.isclose(a.right, b.right, rel_tol=1e-9)
    assert math.isclose(a.mid, b.mid, rel_tol=1e-9)

    p2 = ParamPoint(5, 0.0, 0.0)
    U2 = build_t1(p2, 1.0, 1)  # exponent 0, h = e^{-r}
    a2 = curlfree_triple(U2, p2)
    b2 = curlfree_triple_logpath(U2, p2)
    assert math.isclose(a2.mid, b2.mid, rel_tol=1e-9)


def test_logpath_zero_field():
    U = VectorProfileRadialAligned(
        h=lambda r: np.zeros_like(np.asarray(r, float)),
        h_prime=lambda r: np.zeros_like(np.asarray(r, float)))
    tr = curlfree_triple_logpath(U, ParamPoint(5, 0.0, 0.0))
    assert (tr.left, tr.right, tr.mid) == (0.0, 0.0, 0.0)


# ----------------------------------------------------- consistency and scaling

def test_derivative_consistency_error_bounds():
    u = gaussian_profile()
    assert derivative_consistency_error(u) <= 1e-6
    broken = ScalarProfile(f=u.f, f_prime=lambda r: 1.1 * u.f_prime(r),
                           f_double_prime=u.f_double_prime, k=0)
    assert derivative_consistency_error(broken) > 1e-3


def test_dilation_invariance_of_quotients():
    p = ParamPoint(3, -0.5, 0.25)
    for s in (0.5, 2.0, 7.0):
        u = gaussian_profile()
        us = ScalarProfile(
            f=lambda r: u.f(s * np.asarray(r, float)),
            f_prime=lambda r: s * u.f_prime(s * np.asarray(r, float)),
            f_double_prime=lambda r: s * s * u.f_double_prime(s * np.asarray(r, float)),
            k=0)
        for triple in (scalar_ckn_triple, radial_ckn_triple):
            q0 = _quotient(triple(u, p))
            q1 = _quotient(triple(us, p))
            assert math.isclose(q0, q1, rel_tol=1e-8), triple.__name__
        q0 = _quotient(second_order_triple(u, 3, -0.5))
        q1 = _quotient(second_order_triple(us, 3, -0.5))
        assert math.isclose(q0, q1, rel_tol=1e-8)

        U = VectorProfileRadialAligned(
            h=lambda r: u.f(s * np.asarray(r, float)) * s,
            h_prime=lambda r: s * s * u.f_prime(s * np.asarray(r, float)))
        Ubase = VectorProfileRadialAligned(h=u.f, h_prime=u.f_prime)
        q0 = _quotient(curlfree_triple(Ubase, p))
        q1 = _quotient(curlfree_triple(U, p))
        assert math.isclose(q0, q1, rel_tol=1e-8)


def _perturb(u, c):
    # bounded multiplier 1 + c*2r/(1+r^2); tends to 1 at both ends, so the
    # endpoint behavior that selects the region's admissible class is kept
    def s(r):
        return 2.0 * r / (1.0 + r * r)

    def sp(r):
        return 2.0 * (1.0 - r * r) / (1.0 + r * r) ** 2

    def spp(r):
        return 4.0 * r * (r * r - 3.0) / (1.0 + r * r) ** 3

    return ScalarProfile(
        f=lambda r: u.f(r) * (1.0 + c * s(np.asarray(r, float))),
        f_prime=lambda r: u.f_prime(r) * (1.0 + c * s(np.asarray(r, float)))
        + u.f(r) * c * sp(np.asarray(r, float)),
        f_double_prime=lambda r: u.f_double_prime(r)
        * (1.0 + c * s(np.asarray(r, float)))
        + 2.0 * u.f_prime(r) * c * sp(np.asarray(r, float))
        + u.f(r) * c * spp(np.asarray(r, float)),
        k=0)


def test_scalar_inequality_direction(rng):
    # perturbed region extremizers never beat that region's sharp constant
    for i in range(100):
        N = int(rng.integers(2, 7))
        edge = (N - 2.0) / 2.0
        region = (Region.A1, Region.A2, Region.B1, Region.B2)[i % 4]
        if region is Region.A1:
            b = float(rng.uniform(-1.5, edge))
            a = b + 1.0 - float(rng.uniform(0.15, 2.0))
        elif region is Region.B2:
            b = edge + float(rng.uniform(0.15, 1.2))
            a = b + 1.0 - float(rng.uniform(0.15, 2.0))
        elif region is Region.A2:
            b = edge + float(rng.uniform(0.0, 1.2))
            a = b + 1.0 + float(rng.uniform(0.15, 2.0))
        else:
            b = edge - float(rng.uniform(0.15, 1.2))
            a = b + 1.0 + float(rng.uniform(0.15, 2.0))
        p = ParamPoint(N, a, b)
        assert classify_region(p) is region
        t = float(rng.uniform(0.4, 2.5))
        if region in (Region.A1, Region.B2):
            t = -t
        u = _perturb(build_cc(p, t, gamma=float(rng.uniform(0.5, 2.0))),
                     float(rng.uniform(-0.45, 0.45)))
        tr = scalar_ckn_triple(u, p)
        C = scalar_ckn_constant(p)
        assert tr.left * tr.right >= C * C * tr.mid * tr.mid * (1.0 - 1e-8), \
            (region, N, a, b)
