"""Closed-form lower and upper bounds for weight-3 X-codes with x = 2."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Optional, Union

from scipy.optimize import minimize_scalar

from .catalog import span_bound

ALPHA = 0.25 * (1 / 1749) ** (1 / 3)
BETA = 4 / (15 ** 0.75 * 378131 ** 0.25)
GAMMA = (5 / 3) * (5 / 10606681) ** 0.2 * 6 ** -0.8


def _check_p(p) -> None:
    if not 0 <= p <= 1:
        raise ValueError(f"probability must lie in [0, 1], got {p}")


def subtracted_terms(m: int, d: int) -> list[tuple[int, int]]:
    """``(exponent, coefficient)`` pairs of the expected-violation polynomial.

    The coefficient for configurations of ``k`` triples is
    ``C(m, s) * C(C(s, 3), k)`` with ``s`` the span bound for size ``k``.
    """
    return [(k, math.comb(m, span_bound(k)) * math.comb(math.comb(span_bound(k), 3), k))
            for k in range(3, d + 3)]


def expected_codewords_exact(m: int, d: int, p: Union[Fraction, int]) -> Fraction:
    p = Fraction(p)
    _check_p(p)
    value = math.comb(m, 3) * p
    for k, coeff in subtracted_terms(m, d):
        value -= coeff * p ** k
    return value


def expected_codewords(m: int, d: int, p: float) -> float:
    """Guaranteed expected code size after sampling at ``p`` and deleting.

    The subtracted coefficients count configurations spanning exactly the
    span bound, so the value is a true lower bound on the expectation only
    once ``m >= span_bound(d + 2)``; below that the binomials vanish while
    smaller configurations still exist. Evaluated in exact rational
    arithmetic from the float ``p`` and rounded once, which avoids
    cancellation between the leading and subtracted terms at large ``m``.
    """
    if m < 1 or d < 2:
        raise ValueError(f"need m >= 1 and d >= 2, got m={m}, d={d}")
    return float(expected_codewords_exact(m, d, Fraction(p)))


def recommended_p(m: int, d: int) -> float:
    if m < 1 or d < 2:
        raise ValueError(f"need m >= 1 and d >= 2, got m={m}, d={d}")
    if d == 2:
        p = 2 * (1 / 1749) ** (1 / 3) * m ** (-5 / 3)
    elif d == 3:
        p = 2 * (15 / 378131) ** 0.25 * m ** (-7 / 4)
    else:
        p = 2 * (30 / 10606681) ** 0.2 * m ** (-9 / 5)
    return min(1.0, p)


def optimal_p(m: int, d: int) -> float:
    """Numerically maximize ``expected_codewords`` over ``p`` in [0, 1].

    The objective is a linear term minus non-negative higher powers, hence
    concave on [0, 1], so a bounded scalar search finds the maximum.
    """
    terms = subtracted_terms(m, d)
    lead = math.comb(m, 3)

    def neg(p: float) -> float:
        return -(lead * p - sum(c * p ** k for k, c in terms))

    res = minimize_scalar(neg, bounds=(0.0, 1.0), method="bounded",
                          options={"xatol": 1e-12, "maxiter": 500})
    best = float(res.x)
    # the bounded search never returns an endpoint exactly
    if neg(1.0) <= neg(best):
        best = 1.0
    return best


def asymptotic_lower_bound(m: int, d: int) -> float:
    if d < 2:
        raise ValueError(f"need d >= 2, got {d}")
    if d == 2:
        return ALPHA * m ** (4 / 3)
    if d == 3:
        return BETA * m ** (5 / 4)
    return GAMMA * m ** (6 / 5)


def upper_bound_d1(m: int) -> tuple[float, bool]:
    """The d = 1 ceiling ``m(m-1)/6`` and whether equality is attainable."""
    return m * (m - 1) / 6, m % 6 in (1, 3)


@dataclass(frozen=True)
class BoundReport:
    m: int
    d: int
    p: float
    p_source: str
    expected_codewords: float
    asymptotic_lower: float
    upper_bound_d1: float
    upper_bound_attainable: bool
    alpha: float = ALPHA
    beta: float = BETA
    gamma: float = GAMMA

    def as_dict(self) -> dict:
        return asdict(self)


def bound_report(m: int, d: int, p: Optional[float] = None, *, optimize: bool = False) -> BoundReport:
    if p is None:
        p, source = (optimal_p(m, d), "optimal") if optimize else (recommended_p(m, d), "recommended")
    else:
        _check_p(p)
        source = "given"
    ub, attainable = upper_bound_d1(m)
    return BoundReport(m=m, d=d, p=p, p_source=source,
                       expected_codewords=expected_codewords(m, d, p),
                       asymptotic_lower=asymptotic_lower_bound(m, d),
                       upper_bound_d1=ub, upper_bound_attainable=attainable)
