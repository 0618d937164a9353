"""Probabilists' Hermite polynomials and their half-range Gaussian moments.

Convention: weight exp(-x**2/2), so h0 = 1, h1 = x, h2 = x**2 - 1 and
the three-term recurrence is h_{n+1} = x*h_n - n*h_{n-1}.  Everything on
the exact path (values at zero, linearization coefficients, half-range
moments) is integer/rational arithmetic; only hermite_eval works in
floating point.
"""
from __future__ import annotations

from functools import lru_cache
from math import comb, factorial

from gmpy2 import mpq

from .exact import PiPolynomial, Rational


def hermite_eval(n: int, x):
    """Evaluate h_n(x) by the three-term recurrence.

    Accepts a scalar or a numpy array for x.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    h_prev = 1.0 + 0.0 * x  # ones of the same shape as x
    if n == 0:
        return h_prev
    h_cur = 1.0 * x
    for k in range(1, n):
        h_prev, h_cur = h_cur, x * h_cur - k * h_prev
    return h_cur


@lru_cache(maxsize=None)
def hermite_at_zero(n: int) -> Rational:
    """h_n(0): zero for odd n, (-1)**m * (2m-1)!! for n = 2m."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n % 2 == 1:
        return mpq(0)
    m = n // 2
    dfact = 1
    for k in range(1, 2 * m, 2):
        dfact *= k
    return mpq((-1) ** m * dfact)


def hermite_linearize(i: int, j: int) -> dict:
    """Coefficients of h_i*h_j in the Hermite basis, keyed by degree.

    h_i*h_j = sum_{m=0}^{min(i,j)} C(i,m)*C(j,m)*m! * h_{i+j-2m}.
    """
    if i < 0 or j < 0:
        raise ValueError("i, j must be nonnegative")
    out = {}
    for m in range(min(i, j) + 1):
        out[i + j - 2 * m] = mpq(comb(i, m) * comb(j, m) * factorial(m))
    return out


@lru_cache(maxsize=None)
def half_moment(n: int) -> PiPolynomial:
    """Exact M_n = integral of h_n over [0, inf) against the standard
    Gaussian measure: M_0 = 1/2, M_n = h_{n-1}(0) * s for n >= 1,
    with s = (2*pi)**(-1/2)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return PiPolynomial.from_rational(mpq(1, 2))
    return PiPolynomial.s_power(1, hermite_at_zero(n - 1))
