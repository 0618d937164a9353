"""Cross-validation checks wiring the three routes together.

Each check returns a dict with name, passed, measured, required and the
wall time; the CLI `validate` subcommand and the acceptance tests both
run these.  The `fast` suite uses 1e6-path Monte Carlo runs and a
reduced structure order; `full` runs the 1e7-path simulations, the
order-40 structure sweep and the empirical radius check.
"""
from __future__ import annotations

import math
import time
from fractions import Fraction
from math import factorial

from . import mc, reference, series, spectral
from .exact import as_rational


def orthant_probability(rho: float) -> float:
    """Closed-form P(X0 >= 0, X1 >= 0) for the AR(1) pair.

    (X0, X1) is bivariate normal with correlation rho/sqrt(1+rho^2);
    the positive-orthant mass is 1/4 + arcsin(corr)/(2*pi).
    """
    corr = rho / math.sqrt(1.0 + rho * rho)
    return 0.25 + math.asin(corr) / (2.0 * math.pi)


def _check(name, measured, required, passed, seconds):
    return {
        "name": name,
        "passed": bool(passed),
        "measured": measured,
        "required": required,
        "seconds": round(seconds, 3),
    }


def check_coefficient_table():
    t0 = time.time()
    exp = series.expand(8)
    mismatches = []
    for n, want in enumerate(reference.K_PI_FORMS):
        got = exp.K[n].pi_form()
        if got != want:
            mismatches.append(n)
    return _check("coefficient-table-exact", f"mismatches at {mismatches}" if mismatches else "all 9 exact",
                  "K0..K8 symbolically equal to the reference table", not mismatches,
                  time.time() - t0)


def check_kato_bound():
    t0 = time.time()
    bound = series.kato_radius_bound(Fraction(1, 2), 1, Fraction(1, 2))
    ok = bound == as_rational(Fraction(1, 3))
    return _check("kato-radius-bound", str(bound), "exactly 1/3", ok, time.time() - t0)


def check_rho_zero(rule=None):
    t0 = time.time()
    rule = rule or spectral.build_rule()
    exp = series.expand(8)
    errs = [
        abs(series.eval_lambda_series(exp, 0.0, 8) - 0.5),
        abs(spectral.perron_eigenpair(spectral.discretize(0.0, rule)).eigenvalue - 0.5),
    ]
    for n in range(21):
        errs.append(abs(spectral.persistence_by_power(0.0, n, rule) - 2.0 ** -(n + 1)))
    worst = max(errs)
    return _check("rho-zero-ground-truth", worst, "< 1e-10", worst < 1e-10, time.time() - t0)


def check_cross_method(rule=None, order: int = 40):
    t0 = time.time()
    rule = rule or spectral.build_rule()
    exp = series.expand(order)
    worst = 0.0
    for rho in (0.1, -0.1, 0.2, -0.2, 0.3, -0.3):
        lam_n = spectral.perron_eigenpair(spectral.discretize(rho, rule)).eigenvalue
        lam_s = series.eval_lambda_series(exp, rho, order)
        worst = max(worst, abs(lam_n - lam_s))
    return _check("cross-method-eigenvalue", worst, "< 1e-8", worst < 1e-8, time.time() - t0)


def check_orthant(rule=None):
    t0 = time.time()
    rule = rule or spectral.build_rule()
    err = abs(spectral.persistence_by_power(0.5, 1, rule) - orthant_probability(0.5))
    return _check("orthant-oracle", err, "< 1e-8", err < 1e-8, time.time() - t0)


def check_hilbert_schmidt(rule=None):
    t0 = time.time()
    rule = rule or spectral.build_rule()
    fine = spectral.build_rule(nodes_per_panel=32, panels=rule.panels, L=rule.L)
    err0 = abs(spectral.discretize(0.0, rule).frobenius_sq() - 0.25)
    f_coarse = spectral.discretize(0.5, rule).frobenius_sq()
    f_fine = spectral.discretize(0.5, fine).frobenius_sq()
    drift = abs(f_fine - f_coarse) / f_fine
    ok = err0 < 1e-10 and math.isfinite(f_coarse) and drift < 0.01
    return _check("hilbert-schmidt", {"rho0_error": err0, "rho05_grid_drift": drift},
                  "rho0 error < 1e-10, rho=0.5 drift < 1%", ok, time.time() - t0)


def check_structure(order: int = 40):
    t0 = time.time()
    exp = series.expand(order)
    pi_ok = all(k.pi_form() is not None for k in exp.K)
    parity_ok = True
    for k in range(order + 1):
        for j in range(k + 1):
            g = exp.g(j, k)
            if any(e % 2 != j % 2 for e in g.coeffs):
                parity_ok = False
    sym_ok = True
    for i in range(16):
        for j in range(16):
            if series.psi(i, j) * factorial(j) != series.psi(j, i) * factorial(i):
                sym_ok = False
    ok = pi_ok and parity_ok and sym_ok
    return _check(f"structure-invariants-order{order}",
                  {"pi_form": pi_ok, "g_parity": parity_ok, "psi_symmetry": sym_ok},
                  "all exact", ok, time.time() - t0)


def check_monte_carlo(rho: float, paths: int, seed: int = 20240824,
                      rule=None, n_max: int = 35, batches: int = 20):
    """Fitted MC slope within 3 standard errors of the spectral log-lambda.

    The fit window is [10, 30] clipped at the deepest horizon that still
    has 100 survivors (the count floor of the fitting contract).
    """
    t0 = time.time()
    rule = rule or spectral.build_rule()
    est = mc.simulate(mc.SimConfig(rho=rho, n_max=n_max, paths=paths,
                                   seed=seed, batches=batches))
    n_lo, n_hi = 10, 30
    while n_hi > n_lo and est.survivors[n_hi] < 100:
        n_hi -= 1
    slope, se = mc.fit_exponent(est, n_lo, n_hi)
    lam = spectral.perron_eigenpair(spectral.discretize(rho, rule)).eigenvalue
    target = math.log(lam)
    dev = abs(slope - target) / se
    ok = dev < 3.0
    if rho == 0.0:
        dev0 = abs(slope - math.log(0.5)) / se
        ok = ok and dev0 < 3.0
    return _check(f"monte-carlo-sandwich-rho{rho}",
                  {"slope": slope, "se": se, "log_lambda": target,
                   "deviation_se": dev, "window": [n_lo, n_hi]},
                  "within 3 standard errors", ok, time.time() - t0)


def check_radius(order: int = 60, window: int = 20):
    t0 = time.time()
    exp = series.expand(order)
    estimate = series.radius_estimate(exp, window)
    ok = estimate > 1.0 / 3.0 and estimate <= 1.1
    return _check("empirical-radius", estimate, "in (1/3, 1.1]", ok, time.time() - t0)


def run_suite(suite: str):
    if suite not in ("fast", "full"):
        raise ValueError(f"unknown suite {suite!r}; choose fast or full")
    rule = spectral.build_rule()
    checks = [
        check_coefficient_table(),
        check_kato_bound(),
        check_rho_zero(rule),
        check_cross_method(rule),
        check_orthant(rule),
        check_hilbert_schmidt(rule),
    ]
    if suite == "fast":
        checks.append(check_structure(order=20))
        checks.append(check_monte_carlo(0.5, paths=1_000_000, rule=rule))
    else:
        checks.append(check_structure(order=40))
        for rho in (0.0, 0.3, 0.5):
            checks.append(check_monte_carlo(rho, paths=10_000_000, rule=rule))
        checks.append(check_radius())
    return checks
