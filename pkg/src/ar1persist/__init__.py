"""Persistence exponent of Gaussian AR(1) processes.

Three independent routes to the exponent: exact perturbation series,
spectral (Nystrom) discretization of the half-line Mehler operator, and
Monte Carlo simulation, plus a CLI that cross-validates them.
"""

from .exact import PiPolynomial, Rational
from .hermite import half_moment, hermite_at_zero, hermite_eval, hermite_linearize
from .series import (
    SeriesExpansion,
    eigen_residual,
    eval_lambda_series,
    expand,
    kato_radius_bound,
    psi,
    radius_estimate,
)
from .spectral import (
    DiscretizedOperator,
    QuadratureRule,
    build_rule,
    discretize,
    perron_eigenpair,
    persistence_by_power,
)
from .mc import PersistenceEstimate, SimConfig, fit_exponent, simulate

__all__ = [
    "PiPolynomial",
    "Rational",
    "hermite_eval",
    "hermite_at_zero",
    "hermite_linearize",
    "half_moment",
    "psi",
    "SeriesExpansion",
    "expand",
    "eval_lambda_series",
    "kato_radius_bound",
    "radius_estimate",
    "eigen_residual",
    "QuadratureRule",
    "DiscretizedOperator",
    "build_rule",
    "discretize",
    "perron_eigenpair",
    "persistence_by_power",
    "SimConfig",
    "PersistenceEstimate",
    "simulate",
    "fit_exponent",
]

__version__ = "0.1.0"
