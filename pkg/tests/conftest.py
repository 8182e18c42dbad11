"""Shared oracles and profile builders for the test suite.

Oracle policy: frozen literals in the tests come from one of three
independent computations, named in a comment next to each literal:
  - mpmath partial sums of the defining hypergeometric series (30+ digits),
  - the Gamma-integral closed form int_0^inf r^p e^(-c r^q) dr,
  - central finite differences of adjacent analytic callables.
"""

import math

import numpy as np
import pytest

from ckn_verify import ScalarProfile


def gamma_tail(p: float, c: float, q: float) -> float:
    """int_0^inf r^p exp(-c r^q) dr = Gamma((p+1)/q) / (q c^((p+1)/q))."""
    s = (p + 1.0) / q
    return math.exp(math.lgamma(s)) / (q * c ** s)


def oracle_1f1(A: float, B: float, z: float) -> float:
    """Partial sums of the defining series in high-precision arithmetic.

    Precision grows with |z| to absorb the alternating-series cancellation;
    the early-exit guard waits past the term-magnitude peak near n ~ |z|.
    Intended for |z| <= ~100; larger arguments get frozen literals instead.
    """
    import mpmath

    dps = 45 + int(0.95 * abs(z))
    with mpmath.workdps(dps):
        A_, B_, z_ = mpmath.mpf(A), mpmath.mpf(B), mpmath.mpf(z)
        term = mpmath.mpf(1)
        s = mpmath.mpf(1)
        floor = mpmath.mpf(10) ** (-dps + 5)
        n = 0
        while True:
            term = term * (A_ + n) / (B_ + n) * z_ / (n + 1)
            s += term
            n += 1
            if n > abs(z) + 20 and abs(term) < floor * max(mpmath.mpf(1), abs(s)):
                return float(s)
            if n > 100000:
                raise RuntimeError("oracle series did not converge")


def _differentiate(terms: dict, beta: float, m: float) -> dict:
    # d/dr [r^p e^(-beta r^m)] = (p r^(p-1) - beta m r^(p+m-1)) e^(-beta r^m)
    out = {}
    for p, c in terms.items():
        if p != 0.0:
            out[p - 1.0] = out.get(p - 1.0, 0.0) + c * p
        out[p + m - 1.0] = out.get(p + m - 1.0, 0.0) - c * beta * m
    return {p: c for p, c in out.items() if c != 0.0}


def _evaluator(terms: dict, beta: float, m: float):
    items = sorted(terms.items())

    def fn(r):
        r = np.asarray(r, dtype=float)
        s = np.zeros_like(r)
        for p, c in items:
            s = s + c * r ** p
        return s * np.exp(-beta * r ** m)

    return fn


def poly_exp_profile(k: int, coeffs, beta: float, m: float) -> ScalarProfile:
    """f(r) = r^k (c0 + c1 r^2 + c2 r^4 + ...) exp(-beta r^m) with analytic
    derivatives, differentiated term by term in (power, coefficient) form."""
    t0 = {float(k + 2 * j): float(c) for j, c in enumerate(coeffs) if c != 0.0}
    t1 = _differentiate(t0, beta, m)
    t2 = _differentiate(t1, beta, m)
    return ScalarProfile(
        f=_evaluator(t0, beta, m),
        f_prime=_evaluator(t1, beta, m),
        f_double_prime=_evaluator(t2, beta, m),
        k=k,
    )


def random_poly_profile(rng) -> ScalarProfile:
    """A randomized smooth decaying profile: r^k * even polynomial * exp tail.

    With k in {0,1,2} and exponent m >= 2 every weighted integral the suite
    uses converges as long as the caller keeps a < N/2.
    """
    k = int(rng.integers(0, 3))
    coeffs = rng.uniform(0.3, 1.5, size=3)
    coeffs[1:] *= rng.choice([-0.3, 0.25, 0.5], size=2)
    beta = float(rng.uniform(0.4, 2.0))
    m = float(rng.uniform(2.0, 3.5))
    return poly_exp_profile(k, coeffs, beta, m)


@pytest.fixture
def rng():
    return np.random.default_rng(20240819)
