"""Eigenvalue perturbation series for the half-line Mehler operator.

The largest eigenvalue admits the expansion lambda_rho = sum K_n rho**n
near rho = 0.  The coefficients K_n and the eigenfunction coefficients
G_{j,k} are obtained exactly, order by order, from the triangular system

    sum_{i=j}^{k} K_{k-i} G_{j,i} = sum_{i=0}^{k-j} G_{i,k-j} psi_{i,j}

driven by the half-line Hermite cross-moments psi_{i,j}.  The free scale
of the eigenfunction is fixed by G_{0,0} = 1 and G_{0,k} = 0 for k >= 1,
which closes the recursion in strict triangular order.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial

import numpy as np
from gmpy2 import mpq

from .exact import PiPolynomial, Rational, as_rational
from .hermite import half_moment, hermite_eval, hermite_linearize


@lru_cache(maxsize=None)
def psi(i: int, j: int) -> PiPolynomial:
    """Exact psi_{i,j} = (1/j!) * integral of h_i*h_j over [0, inf) dgamma.

    Evaluated by linearizing the product into the Hermite basis and
    summing the closed-form half-range moments; always a monomial in s
    (pure rational when i+j is even, rational multiple of s when odd).
    """
    total = PiPolynomial.zero()
    for degree, c in hermite_linearize(i, j).items():
        total = total + half_moment(degree) * c
    return total * mpq(1, factorial(j))


@dataclass
class SeriesExpansion:
    """Exact expansion data up to a given order.

    K[n] is the eigenvalue coefficient K_n; g(j, k) returns the
    eigenfunction coefficient G_{j,k} (defined for 0 <= j <= k <= order).
    """

    order: int
    K: list
    _G: dict
    _K_floats: list = field(default=None, repr=False)

    def g(self, j: int, k: int) -> PiPolynomial:
        if not (0 <= j <= k <= self.order):
            raise IndexError(f"G_{{{j},{k}}} outside the computed triangle")
        return self._G[(j, k)]

    def k_float(self, n: int) -> float:
        """Float value of K_n (high-precision evaluation, cached)."""
        if self._K_floats is None:
            object.__setattr__(self, "_K_floats", [p.eval() for p in self.K])
        return self._K_floats[n]


def expand(order: int) -> SeriesExpansion:
    """Run the coefficient recursion exactly up to the requested order."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    one = PiPolynomial.one()
    zero = PiPolynomial.zero()
    K = [psi(0, 0)]  # K_0 = 1/2
    G = {(0, 0): one}
    for k in range(1, order + 1):
        G[(0, k)] = zero
        for j in range(1, k + 1):
            rhs = zero
            for i in range(0, k - j + 1):
                gi = G[(i, k - j)]
                if gi:
                    rhs = rhs + gi * psi(i, j)
            corr = zero
            for i in range(j, k):
                gji = G[(j, i)]
                if gji:
                    corr = corr + K[k - i] * gji
            # divide by K_0 = 1/2
            G[(j, k)] = (rhs - corr) * 2
        kk = zero
        for i in range(1, k + 1):
            gik = G[(i, k)]
            if gik:
                kk = kk + gik * psi(i, 0)
        K.append(kk)
    return SeriesExpansion(order=order, K=K, _G=G)


def eval_lambda_series(series: SeriesExpansion, rho: float, truncation: int) -> float:
    """Partial sum sum_{n<=truncation} K_n rho**n."""
    if not abs(rho) < 1:
        raise ValueError(f"series evaluation requires |rho| < 1, got {rho}")
    if truncation < 0 or truncation > series.order:
        raise ValueError("truncation must lie in [0, series.order]")
    total = 0.0
    for n in range(truncation, -1, -1):  # Horner
        total = total * rho + series.k_float(n)
    return total


def kato_radius_bound(a, c, d) -> Rational:
    """Lower bound 1/(2a/d + c) for the convergence radius.

    a, c bound the perturbation-term norms (||T^(n)|| <= a*c**(n-1)),
    d is the spectral gap at the unperturbed eigenvalue.  With a = 1/2,
    c = 1, d = 1/2 this reproduces the proven bound 1/3.
    """
    a = as_rational(a)
    c = as_rational(c)
    d = as_rational(d)
    if a < 0 or c < 0:
        raise ValueError("a and c must be nonnegative")
    if d <= 0:
        raise ValueError("spectral gap d must be positive")
    return 1 / (2 * a / d + c)


def radius_estimate(series: SeriesExpansion, window: int) -> float:
    """Root-test radius estimate from the trailing coefficients.

    Returns 1 / max over the last `window` indices n of |K_n|**(1/n),
    skipping vanishing coefficients.  A max-based root test is robust to
    individual K_n being zero.
    """
    if window < 4:
        raise ValueError("window must be at least 4")
    if series.order < 2 * window:
        raise ValueError(
            f"window {window} needs series order >= {2 * window}, have {series.order}"
        )
    roots = []
    for n in range(series.order - window + 1, series.order + 1):
        val = abs(series.k_float(n))
        if val > 0.0:
            roots.append(val ** (1.0 / n))
    if not roots:
        raise ValueError("all coefficients in the window vanish")
    return 1.0 / max(roots)


def eigen_residual(series: SeriesExpansion, rho: float, truncation: int,
                   probes, rule=None) -> float:
    """Residual of the truncated eigenpair in the operator equation.

    Builds f(x) = sum_{j<=truncation} rho**j sum_i G_{i,j} h_i(x),
    applies the quadrature form of the Mehler operator, and returns
    max over probes of |lambda_series * f(x) - (Mf)(x)|.
    """
    from . import spectral  # deferred; spectral does not import series

    if rule is None:
        rule = spectral.build_rule()
    probes = np.asarray(probes, dtype=float)
    if probes.size == 0:
        raise ValueError("need at least one probe point")
    if np.any(probes < 0):
        raise ValueError("probes must lie in [0, inf)")
    if truncation < 0 or truncation > series.order:
        raise ValueError("truncation must lie in [0, series.order]")

    # Hermite-basis coefficients of the truncated eigenfunction.
    coeff = np.zeros(truncation + 1)
    for j in range(truncation + 1):
        rj = rho ** j
        for i in range(j + 1):
            gij = series.g(i, j)
            if gij:
                coeff[i] += rj * gij.eval()

    def f_at(x):
        total = np.zeros_like(np.asarray(x, dtype=float))
        for i, c in enumerate(coeff):
            if c != 0.0:
                total = total + c * hermite_eval(i, x)
        return total

    lam = eval_lambda_series(series, rho, truncation)
    f_nodes = f_at(rule.nodes)
    dens = rule.weights * spectral.gauss_density(rule.nodes)
    kern = spectral.mehler_kernel(rho, probes[:, None], rule.nodes[None, :])
    mf = kern @ (dens * f_nodes)
    return float(np.max(np.abs(lam * f_at(probes) - mf)))
