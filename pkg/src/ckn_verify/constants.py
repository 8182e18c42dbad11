"""Closed-form sharp constants, admissibility predicates, region taxonomy.

Everything here is exact arithmetic on the parameters (N, a, b); no
quadrature.  The verify module compares measured Rayleigh quotients against
these values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

__all__ = [
    "ParamPoint",
    "Region",
    "classify_region",
    "scalar_ckn_constant",
    "curlfree_admissible",
    "curlfree_ckn_constant",
    "second_order_constant",
    "extremizer_exponent",
    "reference_constants",
]

# absolute tolerance for detecting the degenerate line a = b+1
_LINE_TOL = 1e-12


@dataclass(frozen=True)
class ParamPoint:
    """Dimension and weight exponents (N, a, b) of one inequality instance."""

    N: int
    a: float
    b: float

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 1:
            raise ValueError(f"dimension must be an integer >= 1, got {self.N}")


class Region(Enum):
    """Parameter regions of the scalar inequality; LINE is the a = b+1 border."""

    A1 = "A1"
    A2 = "A2"
    B1 = "B1"
    B2 = "B2"
    LINE = "LINE"


def classify_region(p: ParamPoint) -> Region:
    """Region label of (N, a, b); the line takes precedence, A-regions are closed."""
    d = p.b + 1.0 - p.a
    if abs(d) <= _LINE_TOL:
        return Region.LINE
    half = (p.N - 2.0) / 2.0
    if d > 0.0:
        return Region.A1 if p.b <= half else Region.B2
    return Region.A2 if p.b >= half else Region.B1


def scalar_ckn_constant(p: ParamPoint) -> float:
    """Sharp constant C (not squared) of the scalar inequality at (N, a, b)."""
    region = classify_region(p)
    if region is Region.LINE:
        return abs(p.N - 2.0 * (p.b + 1.0)) / 2.0
    if region in (Region.A1, Region.A2):
        return abs(p.N - (p.a + p.b + 1.0)) / 2.0
    return abs(p.N - (3.0 * p.b - p.a + 3.0)) / 2.0


def curlfree_admissible(N: int, a: float) -> bool:
    """Admissibility (N/2 - a)^2 >= N+1 required by the curl-free theorem."""
    if N < 2:
        raise ValueError(f"curl-free inequalities need N >= 2, got {N}")
    return (N / 2.0 - a) ** 2 >= N + 1.0


def curlfree_ckn_constant(p: ParamPoint) -> float:
    """Sharp constant C of the curl-free inequality, branch by sign of a-b+1."""
    if not curlfree_admissible(p.N, p.a):
        raise ValueError(
            f"(N={p.N}, a={p.a}) inadmissible: (N/2-a)^2 = "
            f"{(p.N / 2.0 - p.a) ** 2:g} < N+1 = {p.N + 1}"
        )
    d = p.a - p.b + 1.0
    if abs(d) <= _LINE_TOL:
        raise ValueError("no sharp constant on a-b+1 = 0; refusing to extrapolate")
    root = math.sqrt((1.0 - p.N / 2.0 + p.a) ** 2 + p.N - 1.0)
    # + branch for d > 0, - branch for d < 0; both add |d|/2
    return root + abs(d) / 2.0


def second_order_constant(N: int, a: float) -> float:
    """Sharp constant squared, (N+2+4a)^2 / 4, of the second-order inequality."""
    if N < 1:
        raise ValueError(f"dimension must be >= 1, got {N}")
    return (N + 2.0 + 4.0 * a) ** 2 / 4.0


def extremizer_exponent(N: int, a: float, branch) -> float:
    """Radial power -N/2 + a +/- sqrt((1-N/2+a)^2 + N-1) of the curl-free family.

    branch accepts +1/-1 or the strings "+"/"-".
    """
    if N < 2:
        raise ValueError(f"curl-free exponent needs N >= 2, got {N}")
    if branch in ("+", 1, +1.0):
        sgn = 1.0
    elif branch in ("-", -1, -1.0):
        sgn = -1.0
    else:
        raise ValueError(f"branch must be '+'/'-' or +-1, got {branch!r}")
    return -N / 2.0 + a + sgn * math.sqrt((1.0 - N / 2.0 + a) ** 2 + N - 1.0)


def reference_constants(N: int) -> dict:
    """Literature constants at dimension N; entries without a stated value omitted.

    mazya_divfree uses the special value 4 at N=2 (the closed form below is
    stated for N >= 3 and would give 3+2*sqrt(2) there); rellich has no stated
    N=2 value, so the key is absent in that dimension.
    """
    if N < 2:
        raise ValueError(f"reference table needs N >= 2, got {N}")
    table = {
        "hup_scalar": N * N / 4.0,
        "hyup_scalar": (N - 1.0) ** 2 / 4.0,
        "hardy": (N - 2.0) ** 2 / 4.0,
        "costin_mazya": (N - 2.0) ** 2 / 4.0 * (1.0 + 8.0 / (N * N + 4.0 * N - 4.0)),
    }
    if N == 2:
        table["mazya_divfree"] = 4.0
    else:
        table["mazya_divfree"] = (math.sqrt(N * N - 4.0 * (N - 3.0)) + 2.0) ** 2 / 4.0
    if N == 3:
        table["rellich"] = 25.0 / 38.0
    elif N == 4:
        table["rellich"] = 3.0
    elif N >= 5:
        table["rellich"] = N * N / 4.0
    return table
