import math

import numpy as np
import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from ar1persist import half_moment, hermite_at_zero, hermite_eval, hermite_linearize


def gauss_density(y):
    return math.exp(-0.5 * y * y) / math.sqrt(2.0 * math.pi)


def full_line_gamma_integral(f, degree):
    """Gauss-Hermite (probabilists') quadrature, exact for polynomials."""
    nodes, weights = np.polynomial.hermite_e.hermegauss(max(degree, 1))
    return float(np.dot(weights, f(nodes))) / math.sqrt(2.0 * math.pi)


def test_eval_examples():
    assert hermite_eval(0, 7.3) == 1.0
    assert hermite_eval(2, 3.0) == 8.0
    assert hermite_eval(3, 2.0) == 2.0


def test_eval_accepts_arrays():
    x = np.array([0.0, 1.0, 2.0])
    np.testing.assert_allclose(hermite_eval(2, x), x * x - 1.0)


def test_at_zero_examples():
    assert hermite_at_zero(0) == 1
    assert hermite_at_zero(2) == -1
    assert hermite_at_zero(4) == 3
    assert hermite_at_zero(7) == 0
    assert hermite_at_zero(6) == -15


def test_linearize_examples():
    assert hermite_linearize(0, 5) == {5: mpq(1)}
    assert hermite_linearize(1, 1) == {2: mpq(1), 0: mpq(1)}
    assert hermite_linearize(2, 1) == {3: mpq(1), 1: mpq(2)}


def test_half_moment_examples():
    assert half_moment(0).coeffs == {0: mpq(1, 2)}
    assert half_moment(1).coeffs == {1: mpq(1)}
    assert half_moment(2).coeffs == {}
    assert half_moment(1).eval() == pytest.approx(0.3989422804014327, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=0, max_value=30),
       st.floats(min_value=-5.0, max_value=5.0, allow_nan=False))
def test_recurrence_consistency(n, x):
    lhs = hermite_eval(n + 1, x)
    if n == 0:
        rhs = x * hermite_eval(0, x)
    else:
        rhs = x * hermite_eval(n, x) - n * hermite_eval(n - 1, x)
    assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-10)


@pytest.mark.parametrize("i", range(0, 13, 3))
@pytest.mark.parametrize("j", range(0, 13, 4))
def test_linearization_matches_product(i, j):
    rng = np.random.default_rng(7)
    for x in rng.uniform(-3, 3, size=5):
        direct = hermite_eval(i, x) * hermite_eval(j, x)
        summed = sum(float(c) * hermite_eval(deg, x)
                     for deg, c in hermite_linearize(i, j).items())
        assert summed == pytest.approx(direct, rel=1e-9, abs=1e-9)


def test_full_line_orthogonality():
    for m in range(11):
        for n in range(11):
            val = full_line_gamma_integral(
                lambda y: hermite_eval(m, y) * hermite_eval(n, y), 40)
            want = math.factorial(n) if m == n else 0.0
            assert val == pytest.approx(want, abs=1e-8)


def test_half_line_norm(rule):
    for n in range(11):
        val = rule.integrate_gamma(hermite_eval(n, rule.nodes) ** 2)
        assert val == pytest.approx(math.factorial(n) / 2.0, abs=1e-8)


@pytest.mark.parametrize("n", range(21))
def test_half_moment_against_quadrature(n):
    oracle, err = quad(lambda y: hermite_eval(n, y) * gauss_density(y),
                       0.0, np.inf, epsabs=1e-13, limit=200)
    assert half_moment(n).eval() == pytest.approx(oracle, abs=1e-10)
