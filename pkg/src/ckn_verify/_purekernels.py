"""Pure numpy lane for the confluent hypergeometric kernels.

Evaluation strategy for 1F1(A;B;z), shared verbatim with the compiled lane:

  z >= -1          direct Taylor series, Kahan-compensated
  -600  < z < -1   reflected series exp(z)*1F1(B-A;B;-z); summands positive
  -2000 < z <=-600 reflected series summed with on-the-fly rescaling so the
                   partial sums cannot overflow; recombined in log space
  z <= -2000       negative-axis expansion with descending correction terms,
                   truncated at its smallest term (error ~1e-12 at the switch)

The reflection keeps every summand positive, so the only accuracy loss for
deeply negative z is the final exp/log round trip.  The last branch exists for
tail-decay probes at r up to 1e6, where z reaches -1e12 and no series form is
practical in doubles.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import KummerConvergenceError, KummerDomainError

BACKEND_KIND = "pure"

MAX_TERMS = 10000
Z_REFLECT = -1.0
Z_DEEP = -600.0
Z_ASYM = -2000.0
_EPS = 1e-16
_LOG_BIG = 250.0 * math.log(10.0)  # rescale quantum for the deep reflection
_BIG = 1e250


def _check_b(B: float) -> None:
    if B <= 0.0 and float(B).is_integer():
        raise KummerDomainError(f"second parameter B={B} is a nonpositive integer")


def _is_nonpos_int(x: float) -> bool:
    return x <= 0.0 and float(x).is_integer()


def _signed_ln_gamma(x: float):
    """(sign, ln|Gamma(x)|) for non-pole x; lgamma already drops the sign."""
    if _is_nonpos_int(x):
        raise KummerDomainError(f"gamma pole at {x}")
    if x > 0.0:
        return 1.0, math.lgamma(x)
    sign = -1.0 if math.floor(-x) % 2 == 0 else 1.0
    return sign, math.lgamma(x)


def _series(A: float, B: float, z: float) -> float:
    """Kahan-compensated Taylor sum; stops on two consecutive negligible terms."""
    term = 1.0
    s = 1.0
    comp = 0.0
    small = 0
    for n in range(MAX_TERMS):
        term *= (A + n) / (B + n) * z / (n + 1.0)
        y = term - comp
        tot = s + y
        comp = (tot - s) - y
        s = tot
        if abs(term) <= _EPS * abs(s):
            small += 1
            if small >= 2:
                return s
        else:
            small = 0
    raise KummerConvergenceError(
        f"series for (A={A}, B={B}, z={z}) did not converge in {MAX_TERMS} terms"
    )


def _reflected(A: float, B: float, z: float) -> float:
    """exp(z)*1F1(B-A;B;-z) for z < -1, rescaling when the sum would overflow."""
    Ar = B - A
    x = -z
    if x <= -Z_DEEP:
        return math.exp(z) * _series(Ar, B, x)
    term = 1.0
    s = 1.0
    comp = 0.0
    scale = 0
    small = 0
    for n in range(MAX_TERMS):
        term *= (Ar + n) / (B + n) * x / (n + 1.0)
        y = term - comp
        tot = s + y
        comp = (tot - s) - y
        s = tot
        if abs(s) > _BIG:
            s /= _BIG
            term /= _BIG
            comp /= _BIG
            scale += 1
        if abs(term) <= _EPS * abs(s):
            small += 1
            if small >= 2:
                break
        else:
            small = 0
    else:
        raise KummerConvergenceError(
            f"reflected series for (A={A}, B={B}, z={z}) did not converge"
        )
    if s == 0.0:
        return 0.0
    return math.copysign(1.0, s) * math.exp(z + math.log(abs(s)) + scale * _LOG_BIG)


def _asym_corrected(A: float, B: float, z: float) -> float:
    """Descending expansion at large negative z, truncated at the smallest term."""
    if _is_nonpos_int(B - A):
        # gamma pole kills the power tail; the reflected series terminates
        return _reflected(A, B, z)
    x = -z
    term = 1.0
    s = 1.0
    for n in range(60):
        nxt = term * (A + n) * (A - B + 1.0 + n) / ((n + 1.0) * x)
        if abs(nxt) >= abs(term):
            break  # divergence onset; stop before the smallest term grows
        s += nxt
        term = nxt
        if abs(term) <= _EPS * abs(s):
            break
    sg_b, lg_b = _signed_ln_gamma(B)
    sg_ba, lg_ba = _signed_ln_gamma(B - A)
    return sg_b * sg_ba * math.exp(lg_b - lg_ba - A * math.log(x)) * s


def hyp1f1(A: float, B: float, z: float) -> float:
    _check_b(B)
    z = float(z)
    if z >= Z_REFLECT:
        return _series(float(A), float(B), z)
    if z > Z_ASYM:
        return _reflected(float(A), float(B), z)
    return _asym_corrected(float(A), float(B), z)


def _series_batch(A: float, B: float, z: np.ndarray) -> np.ndarray:
    term = np.ones_like(z)
    s = np.ones_like(z)
    comp = np.zeros_like(z)
    small = np.zeros(z.shape, dtype=np.int8)
    for n in range(MAX_TERMS):
        term *= ((A + n) / (B + n) / (n + 1.0)) * z
        y = term - comp
        tot = s + y
        comp = (tot - s) - y
        s = tot
        conv = np.abs(term) <= _EPS * np.abs(s)
        # clip: the counter only needs to distinguish 0, 1, "2 or more"
        small = np.where(conv, np.minimum(small + 1, 2), 0)
        if (small >= 2).all():
            return s
    raise KummerConvergenceError(
        f"batched series for (A={A}, B={B}) did not converge in {MAX_TERMS} terms"
    )


def _asym_batch(A: float, B: float, x: np.ndarray) -> np.ndarray:
    term = np.ones_like(x)
    s = np.ones_like(x)
    active = np.ones(x.shape, dtype=bool)
    for n in range(60):
        nxt = term * ((A + n) * (A - B + 1.0 + n) / (n + 1.0)) / x
        grow = np.abs(nxt) >= np.abs(term)
        add = active & ~grow
        s = np.where(add, s + nxt, s)
        term = np.where(add, nxt, term)
        active = add & (np.abs(nxt) > _EPS * np.abs(s))
        if not active.any():
            break
    sg_b, lg_b = _signed_ln_gamma(B)
    sg_ba, lg_ba = _signed_ln_gamma(B - A)
    return sg_b * sg_ba * np.exp(lg_b - lg_ba - A * np.log(x)) * s


def hyp1f1_many(A: float, B: float, z) -> np.ndarray:
    """Vectorized evaluation over an argument array (A, B fixed)."""
    _check_b(B)
    A = float(A)
    B = float(B)
    arr = np.asarray(z, dtype=float)
    flat = arr.ravel()
    out = np.empty(flat.shape)

    direct = flat >= Z_REFLECT
    idx = np.nonzero(direct)[0]
    if idx.size:
        out[idx] = _series_batch(A, B, flat[idx])

    moderate = ~direct & (flat > Z_DEEP)
    idx = np.nonzero(moderate)[0]
    if idx.size:
        zi = flat[idx]
        out[idx] = np.exp(zi) * _series_batch(B - A, B, -zi)

    deep = (flat <= Z_DEEP) & (flat > Z_ASYM)
    for i in np.nonzero(deep)[0]:
        out[i] = _reflected(A, B, flat[i])

    tail = flat <= Z_ASYM
    idx = np.nonzero(tail)[0]
    if idx.size:
        if _is_nonpos_int(B - A):
            for i in idx:
                out[i] = _reflected(A, B, flat[i])
        else:
            out[idx] = _asym_batch(A, B, -flat[idx])

    return out.reshape(arr.shape)
