import math

import numpy as np
import pytest
from scipy.integrate import dblquad

from ar1persist import (
    build_rule,
    discretize,
    eval_lambda_series,
    hermite_eval,
    perron_eigenpair,
    persistence_by_power,
)
from ar1persist.spectral import gauss_density, gauss_tail, mehler_kernel
from ar1persist.validate import orthant_probability


def test_rule_basic_invariants(rule):
    assert np.all(np.diff(rule.nodes) > 0)
    assert np.all(rule.weights > 0)
    mass = rule.integrate_gamma(np.ones_like(rule.nodes))
    target = 0.5 - gauss_tail(rule.L)
    assert abs(mass - target) / target < 1e-12


def test_rule_examples(rule):
    assert rule.integrate_gamma(np.ones_like(rule.nodes)) == pytest.approx(0.5, abs=1e-12)
    assert rule.integrate_gamma(rule.nodes) == pytest.approx(
        1.0 / math.sqrt(2.0 * math.pi), abs=1e-10)
    h4sq = hermite_eval(4, rule.nodes) ** 2 / math.factorial(4)
    assert rule.integrate_gamma(h4sq) == pytest.approx(0.5, abs=1e-8)


def test_build_rule_rejects_bad_inputs():
    with pytest.raises(ValueError):
        build_rule(L=-1.0)
    with pytest.raises(ValueError):
        build_rule(nodes_per_panel=1)


def test_discretize_rho_zero_rank_one(rule):
    op = discretize(0.0, rule)
    v = np.sqrt(rule.weights * gauss_density(rule.nodes))
    np.testing.assert_allclose(op.matrix, np.outer(v, v), rtol=0, atol=0)


def test_discretize_symmetric_positive(rule):
    op = discretize(0.5, rule)
    assert np.all(op.matrix > 0)
    assert np.array_equal(op.matrix, op.matrix.T)  # bit-exact symmetry


def test_discretize_rejects_large_rho(rule):
    with pytest.raises(ValueError):
        discretize(0.96, rule)
    with pytest.raises(ValueError):
        discretize(-1.0, rule)


def test_hilbert_schmidt_vs_2d_quadrature(rule):
    rho = 0.3
    op = discretize(rho, rule)
    oracle, _ = dblquad(
        lambda y, x: mehler_kernel(rho, x, y) ** 2 * gauss_density(x) * gauss_density(y),
        0.0, 8.0, 0.0, 8.0, epsabs=1e-10)
    assert abs(op.frobenius_sq() - oracle) / oracle < 0.01


def test_frobenius_rho_zero(rule):
    assert discretize(0.0, rule).frobenius_sq() == pytest.approx(0.25, abs=1e-10)


def test_perron_rho_zero(rule):
    result = perron_eigenpair(discretize(0.0, rule))
    assert result.converged
    assert result.eigenvalue == pytest.approx(0.5, abs=1e-10)
    v = np.sqrt(rule.weights * gauss_density(rule.nodes))
    np.testing.assert_allclose(result.eigenvector, v / np.linalg.norm(v), atol=1e-10)


def test_perron_agrees_with_series(rule, series40):
    result = perron_eigenpair(discretize(0.25, rule))
    assert abs(result.eigenvalue - eval_lambda_series(series40, 0.25, 40)) < 1e-8


@pytest.mark.parametrize("rho", [-0.9, -0.5, 0.0, 0.5, 0.9])
def test_perron_in_unit_interval(rule, rho):
    result = perron_eigenpair(discretize(rho, rule))
    assert 0.0 < result.eigenvalue < 1.0
    assert np.all(result.eigenvector > 0)


@pytest.mark.parametrize("rho", [0.0, 0.25, -0.25, 0.5, -0.5, 0.75, -0.75])
def test_node_doubling_stability(rho):
    coarse = build_rule(nodes_per_panel=16)
    fine = build_rule(nodes_per_panel=32)
    lam_c = perron_eigenpair(discretize(rho, coarse)).eigenvalue
    lam_f = perron_eigenpair(discretize(rho, fine)).eigenvalue
    assert abs(lam_c - lam_f) < 1e-9


def test_truncation_stability():
    short = build_rule(nodes_per_panel=16, panels=8, L=8.0)
    long = build_rule(nodes_per_panel=16, panels=12, L=12.0)
    lam_s = perron_eigenpair(discretize(0.5, short)).eigenvalue
    lam_l = perron_eigenpair(discretize(0.5, long)).eigenvalue
    assert abs(lam_s - lam_l) < 1e-10


def test_eigenvalue_below_hilbert_schmidt_norm(rule):
    for rho in (0.0, 0.3, 0.6):
        op = discretize(rho, rule)
        lam = perron_eigenpair(op).eigenvalue
        assert lam <= math.sqrt(op.frobenius_sq()) + 1e-12


def test_persistence_rho_zero(rule):
    for n in range(21):
        assert persistence_by_power(0.0, n, rule) == pytest.approx(
            2.0 ** -(n + 1), abs=1e-10)


def test_persistence_orthant_oracle(rule):
    assert persistence_by_power(0.5, 1, rule) == pytest.approx(
        orthant_probability(0.5), abs=1e-8)


def test_persistence_monotone_and_bounded(rule):
    for rho in (0.3, -0.4):
        probs = [persistence_by_power(rho, n, rule) for n in range(25)]
        assert all(0.0 < p <= 1.0 for p in probs)
        assert all(b <= a for a, b in zip(probs, probs[1:]))


def test_persistence_log_slope_matches_eigenvalue(rule):
    lam = perron_eigenpair(discretize(0.3, rule)).eigenvalue
    probs = [persistence_by_power(0.3, n, rule) for n in range(20, 41)]
    diffs = np.diff(np.log(probs))
    assert np.max(np.abs(diffs - math.log(lam))) < 1e-6


@pytest.mark.parametrize("rho", [0.25, 0.5])
def test_sandwich_bounds(rule, rho):
    lam = perron_eigenpair(discretize(rho, rule)).eigenvalue
    ratios = [persistence_by_power(rho, n, rule) / lam ** n for n in range(10, 41)]
    assert max(ratios) / min(ratios) < 10.0
