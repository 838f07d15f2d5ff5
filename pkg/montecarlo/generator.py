"""
Panel Generator
Draws synthetic panels from a DgpConfig and a treated-equation variant
"""

from typing import Union

import numpy as np

from montecarlo.dgp import N_FACTORS, DgpConfig, MuWSpec
from panel.models import Panel

Seed = Union[int, np.random.SeedSequence, np.random.Generator]


def replication_rng(master_seed: int, rep: int) -> np.random.Generator:
    """
    Independent random stream for replication `rep`

    Streams are keyed by (master_seed, rep) through SeedSequence spawn keys,
    so a replication draws the same numbers whatever order it runs in.
    """
    return np.random.default_rng(np.random.SeedSequence(master_seed, spawn_key=(rep,)))


def _as_rng(seed: Seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def simulate_ar1(
    rho: np.ndarray,
    sigma: np.ndarray,
    n_periods: int,
    rng: np.random.Generator
) -> np.ndarray:
    """
    Stationary AR(1) paths, one column per (rho, sigma) pair

    The first value is drawn from N(0, sigma^2 / (1 - rho^2)).

    Returns:
        n_periods x len(rho) matrix
    """
    rho = np.atleast_1d(np.asarray(rho, dtype=float))
    sigma = np.atleast_1d(np.asarray(sigma, dtype=float))
    start = rng.standard_normal(rho.size) * sigma / np.sqrt(1.0 - rho ** 2)
    shocks = rng.standard_normal((n_periods, rho.size)) * sigma

    path = np.empty((n_periods, rho.size))
    path[0] = start
    for t in range(1, n_periods):
        path[t] = rho * path[t - 1] + shocks[t]
    return path


def generate_panel(dgp: DgpConfig, spec: MuWSpec, seed: Seed) -> Panel:
    """
    Draw one panel

    Draw order is fixed (factors, control AR errors, trend, treated AR error),
    so the panel is a deterministic function of (dgp, spec, seed).

    Args:
        dgp: Factor-model configuration
        spec: Treated-equation variant
        seed: Integer seed, SeedSequence or Generator

    Returns:
        Panel with times 1..T, the treated unit in column 0 labelled
        'treated' and controls 'c1'..'cN'
    """
    rng = _as_rng(seed)
    equation = spec.resolve(dgp)
    n, n_periods = dgp.n_units, dgp.n_periods

    try:
        factors = rng.multivariate_normal(
            np.zeros(N_FACTORS), dgp.factor_cov, size=n_periods, method="eigh"
        )
    except np.linalg.LinAlgError as e:
        raise ValueError(f"Invalid factor covariance: {e}") from e

    eta = simulate_ar1(np.asarray(dgp.ar_rho), np.asarray(dgp.ar_sigma), n_periods, rng)
    theta = dgp.trend.realize(n_periods, n, rng)
    u = simulate_ar1(np.array([dgp.rho_u]), np.array([dgp.sigma_v]), n_periods, rng)[:, 0]

    controls = dgp.offsets[None, :] + theta + factors @ dgp.loading_matrix.T + eta
    treated = equation.mu + controls @ equation.weights + u
    treated[dgp.t0:] += dgp.effect

    return Panel(
        times=list(range(1, n_periods + 1)),
        outcomes=np.column_stack([treated, controls]),
        treated_col=0,
        t0=dgp.t0,
        unit_labels=["treated"] + [f"c{i}" for i in range(1, n + 1)],
    )
