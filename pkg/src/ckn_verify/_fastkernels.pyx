# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled lane for the confluent hypergeometric kernels.

Same branch structure and tolerances as _purekernels (which see); the scalar
evaluator is a C loop and the array form is a plain element loop over it.
"""

from libc.math cimport exp, log, fabs, floor, lgamma, copysign

import numpy as np

from .errors import KummerConvergenceError, KummerDomainError

BACKEND_KIND = "compiled"

MAX_TERMS = 10000
Z_REFLECT = -1.0
Z_DEEP = -600.0
Z_ASYM = -2000.0

cdef double _EPS = 1e-16
cdef double _BIG = 1e250
cdef double _LOG_BIG = 250.0 * log(10.0)
cdef int _CAP = 10000


cdef inline bint _is_nonpos_int(double x):
    return x <= 0.0 and x == floor(x)


def _check_b(double B):
    if _is_nonpos_int(B):
        raise KummerDomainError(f"second parameter B={B} is a nonpositive integer")


cdef double _series(double A, double B, double z) except *:
    cdef double term = 1.0, s = 1.0, comp = 0.0, y, tot
    cdef int small = 0, n
    for n in range(_CAP):
        term *= (A + n) / (B + n) * z / (n + 1.0)
        y = term - comp
        tot = s + y
        comp = (tot - s) - y
        s = tot
        if fabs(term) <= _EPS * fabs(s):
            small += 1
            if small >= 2:
                return s
        else:
            small = 0
    raise KummerConvergenceError(
        f"series for (A={A}, B={B}, z={z}) did not converge in {_CAP} terms"
    )


cdef double _reflected(double A, double B, double z) except *:
    cdef double Ar = B - A
    cdef double x = -z
    cdef double term = 1.0, s = 1.0, comp = 0.0, y, tot
    cdef int scale = 0, small = 0, n
    cdef bint done = False
    if x <= -Z_DEEP:
        return exp(z) * _series(Ar, B, x)
    for n in range(_CAP):
        term *= (Ar + n) / (B + n) * x / (n + 1.0)
        y = term - comp
        tot = s + y
        comp = (tot - s) - y
        s = tot
        if fabs(s) > _BIG:
            s /= _BIG
            term /= _BIG
            comp /= _BIG
            scale += 1
        if fabs(term) <= _EPS * fabs(s):
            small += 1
            if small >= 2:
                done = True
                break
        else:
            small = 0
    if not done:
        raise KummerConvergenceError(
            f"reflected series for (A={A}, B={B}, z={z}) did not converge"
        )
    if s == 0.0:
        return 0.0
    return copysign(1.0, s) * exp(z + log(fabs(s)) + scale * _LOG_BIG)


cdef double _sign_gamma(double x) except *:
    if _is_nonpos_int(x):
        raise KummerDomainError(f"gamma pole at {x}")
    if x > 0.0:
        return 1.0
    if <long> floor(-x) % 2 == 0:
        return -1.0
    return 1.0


cdef double _asym_corrected(double A, double B, double z) except *:
    cdef double x = -z
    cdef double term = 1.0, s = 1.0, nxt
    cdef int n
    if _is_nonpos_int(B - A):
        return _reflected(A, B, z)
    for n in range(60):
        nxt = term * (A + n) * (A - B + 1.0 + n) / ((n + 1.0) * x)
        if fabs(nxt) >= fabs(term):
            break
        s += nxt
        term = nxt
        if fabs(term) <= _EPS * fabs(s):
            break
    return (_sign_gamma(B) * _sign_gamma(B - A)
            * exp(lgamma(B) - lgamma(B - A) - A * log(x)) * s)


cdef double _eval(double A, double B, double z) except *:
    if z >= Z_REFLECT:
        return _series(A, B, z)
    if z > Z_ASYM:
        return _reflected(A, B, z)
    return _asym_corrected(A, B, z)


def hyp1f1(double A, double B, double z):
    _check_b(B)
    return _eval(A, B, z)


def hyp1f1_many(double A, double B, z):
    """Vectorized evaluation over an argument array (A, B fixed)."""
    _check_b(B)
    arr = np.ascontiguousarray(z, dtype=np.float64)
    shape = arr.shape
    flat = arr.ravel()
    out = np.empty(flat.shape[0], dtype=np.float64)
    cdef double[::1] zv = flat
    cdef double[::1] ov = out
    cdef Py_ssize_t i
    for i in range(zv.shape[0]):
        ov[i] = _eval(A, B, zv[i])
    return out.reshape(shape)
