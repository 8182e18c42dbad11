"""Scalar special functions: log-gamma, sphere areas, Kummer's 1F1.

The confluent hypergeometric evaluations delegate to one of two
interchangeable kernel lanes (compiled or pure numpy); everything else is
thin validation around the standard library.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import _backend
from .errors import KummerConvergenceError, KummerDomainError

__all__ = [
    "KummerParams",
    "KummerConvergenceError",
    "KummerDomainError",
    "ln_gamma",
    "unit_sphere_area",
    "kummer_1f1",
    "kummer_1f1_values",
    "kummer_1f1_derivative",
    "kummer_asymptotic_negative",
    "backend_kind",
]

_K = _backend.kernels()

backend_kind = _backend.backend_kind


def _is_nonpos_int(x: float) -> bool:
    return x <= 0.0 and float(x).is_integer()


@dataclass(frozen=True)
class KummerParams:
    """Parameter triple (A, B, z) of the confluent hypergeometric series."""

    A: float
    B: float
    z: float

    def __post_init__(self):
        # series poles: (B)_n vanishes for nonpositive integer B
        if _is_nonpos_int(self.B):
            raise KummerDomainError(
                f"second parameter B={self.B} is a nonpositive integer"
            )


def ln_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0."""
    if x <= 0.0:
        raise ValueError(f"ln_gamma needs x > 0, got {x}")
    return math.lgamma(x)


def unit_sphere_area(N: int) -> float:
    """Surface measure of the unit sphere in R^N: 2 pi^(N/2) / Gamma(N/2)."""
    if int(N) != N or N < 1:
        raise ValueError(f"dimension must be an integer >= 1, got {N}")
    if N < 340:
        return 2.0 * math.pi ** (0.5 * N) / math.gamma(0.5 * N)
    # avoid pow/gamma overflow for very large N
    return math.exp(math.log(2.0) + 0.5 * N * math.log(math.pi) - math.lgamma(0.5 * N))


def kummer_1f1(p: KummerParams) -> float:
    """1F1(A;B;z) by compensated power series, reflected for z < -1."""
    return _K.hyp1f1(p.A, p.B, p.z)


def kummer_1f1_values(A: float, B: float, z):
    """Array form of kummer_1f1 over a grid of arguments; used by profile closures."""
    return _K.hyp1f1_many(A, B, z)


def kummer_1f1_derivative(p: KummerParams) -> float:
    """d/dz 1F1(A;B;z) = (A/B) 1F1(A+1;B+1;z)."""
    if _is_nonpos_int(p.B + 1.0):
        raise KummerDomainError(f"B+1={p.B + 1.0} is a nonpositive integer")
    return p.A / p.B * _K.hyp1f1(p.A + 1.0, p.B + 1.0, p.z)


def kummer_asymptotic_negative(p: KummerParams) -> float:
    """Leading negative-axis behavior Gamma(B) (-z)^(-A) / Gamma(B-A).

    Valid as z -> -infinity; kept to the leading term by contract, so it can
    serve as an independent cross-check of the series path.
    """
    if p.z >= 0.0:
        raise ValueError(f"asymptotic form needs z < 0, got z={p.z}")
    if _is_nonpos_int(p.B - p.A):
        raise KummerDomainError(f"B-A={p.B - p.A} is a nonpositive integer")
    sg_b, lg_b = _signed_ln_gamma(p.B)
    sg_ba, lg_ba = _signed_ln_gamma(p.B - p.A)
    return sg_b * sg_ba * math.exp(lg_b - lg_ba - p.A * math.log(-p.z))


def _signed_ln_gamma(x: float):
    # lgamma returns ln|Gamma|; reattach the sign for negative non-integers
    if x > 0.0:
        return 1.0, math.lgamma(x)
    sign = -1.0 if math.floor(-x) % 2 == 0 else 1.0
    return sign, math.lgamma(x)
