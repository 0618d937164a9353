"""Monte Carlo route: simulate the AR(1) process and fit the exponent.

X_n = rho * X_{n-1} + xi_n with X_0 and the xi_n standard normal.  One
pass per path records the first index where the process goes negative,
giving survival counts for all horizons simultaneously.  The exponent is
then the slope of a weighted least-squares line through (N, log p_hat).

Determinism contract: results depend only on (seed, paths, batches, rho,
n_max).  Batch b draws from numpy's PCG64 seeded with SeedSequence
([seed, b]); normals come from Generator.standard_normal (ziggurat).
Batch results are merged by summation, which is associative, so any
scheduling of batches yields identical totals.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

RNG_DESCRIPTION = "numpy PCG64, SeedSequence([seed, batch]); standard_normal (ziggurat)"

THREADS_ENV_VAR = "AR1PERSIST_THREADS"


@dataclass(frozen=True)
class SimConfig:
    rho: float
    n_max: int
    paths: int
    seed: int
    batches: int = 1

    def __post_init__(self):
        if not abs(self.rho) < 1:
            raise ValueError(
                f"exponent estimation is scoped to -1 < rho < 1, got {self.rho}"
            )
        if self.n_max < 1:
            raise ValueError("n_max must be positive")
        if self.paths < 1:
            raise ValueError("paths must be positive")
        if self.batches < 1:
            raise ValueError("batches must be positive")
        if self.paths % self.batches != 0:
            raise ValueError(
                f"paths ({self.paths}) must be divisible by batches ({self.batches})"
            )
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must fit in 64 unsigned bits")


@dataclass(frozen=True)
class PersistenceEstimate:
    survivors: np.ndarray  # counts, index N = 0..n_max
    p_hat: np.ndarray
    stderr: np.ndarray
    config: SimConfig
    rng: str = RNG_DESCRIPTION


def _run_batch(config: SimConfig, batch: int) -> np.ndarray:
    rng = np.random.default_rng(np.random.SeedSequence([config.seed, batch]))
    n = config.paths // config.batches
    counts = np.zeros(config.n_max + 1, dtype=np.int64)
    x = rng.standard_normal(n)
    x = x[x >= 0.0]  # persistence event uses the weak inequality
    counts[0] = x.size
    for step in range(1, config.n_max + 1):
        if x.size == 0:
            break
        x = config.rho * x + rng.standard_normal(x.size)
        x = x[x >= 0.0]
        counts[step] = x.size
    return counts


def merge_survivors(batch_counts) -> np.ndarray:
    """Fold per-batch survivor vectors; summation, so any grouping of
    batches gives the same totals."""
    batch_counts = list(batch_counts)
    if not batch_counts:
        raise ValueError("nothing to merge")
    total = np.zeros_like(batch_counts[0])
    for c in batch_counts:
        total = total + c
    return total


def _worker_count() -> int:
    raw = os.environ.get(THREADS_ENV_VAR, "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"{THREADS_ENV_VAR} must be an integer, got {raw!r}")
    return max(1, n)


def simulate(config: SimConfig) -> PersistenceEstimate:
    """Estimate survival probabilities for all horizons 0..n_max.

    Worker count (env AR1PERSIST_THREADS) only affects scheduling,
    never results.
    """
    workers = _worker_count()
    if workers > 1 and config.batches > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            batch_counts = list(pool.map(lambda b: _run_batch(config, b),
                                         range(config.batches)))
    else:
        batch_counts = [_run_batch(config, b) for b in range(config.batches)]
    survivors = merge_survivors(batch_counts)
    p_hat = survivors / config.paths
    stderr = np.sqrt(p_hat * (1.0 - p_hat) / config.paths)
    return PersistenceEstimate(survivors=survivors, p_hat=p_hat,
                               stderr=stderr, config=config)


def fit_exponent(est: PersistenceEstimate, n_lo: int, n_hi: int,
                 min_survivors: int = 100):
    """Weighted least-squares slope of log p_hat over N in [n_lo, n_hi].

    Successive p_hat values share paths, so the log-survival curve has a
    nested covariance; its one-step increments, however, are independent
    (conditional binomials).  The fit is therefore generalized least
    squares on those increments, with inverse-variance weights
    Var(d_N) ~ deaths_N / (S_{N-1} S_N): this is the same regression
    line, but with a standard error that is actually calibrated.
    Returns (slope, slope_se); slope estimates log lambda_rho.  Horizons
    with zero survivors are rejected, as are windows whose deepest
    horizon has fewer than min_survivors survivors (relative error blows
    up there).
    """
    cfg = est.config
    if not (0 < n_lo < n_hi <= cfg.n_max):
        raise ValueError(f"need 0 < n_lo < n_hi <= n_max, got [{n_lo}, {n_hi}]")
    window = np.arange(n_lo, n_hi + 1)
    counts = np.asarray(est.survivors, dtype=float)[window]
    if np.any(counts == 0):
        raise ValueError("fit window contains zero-survivor horizons")
    if counts[-1] < min_survivors:
        raise ValueError(
            f"survivors at N={n_hi} is {counts[-1]:.0f}, below the floor "
            f"{min_survivors}; shrink the window or add paths"
        )
    if len(counts) < 3:
        raise ValueError("fit window must contain at least 3 horizons")
    d = np.diff(np.log(counts))
    deaths = counts[:-1] - counts[1:]
    # an increment with no deaths carries a degenerate variance estimate;
    # treat it like a single death rather than an infinite weight
    var = np.maximum(deaths, 1.0) / (counts[:-1] * counts[1:])
    w = 1.0 / var
    sw = w.sum()
    slope = float(np.dot(w, d) / sw)
    resid = d - slope
    dof = len(d) - 1
    scale = float(np.dot(w, resid ** 2)) / dof if dof > 0 else 0.0
    slope_se = math.sqrt(max(scale, 0.0) / sw)
    return slope, slope_se
