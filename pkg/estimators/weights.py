"""
Weight Estimators
SC, CL, MCL and DID fits with intercepts recovered from demeaned data
"""

from typing import Optional

import numpy as np

from estimators.methods import Method, constraint_for, default_intercept
from monitoring import get_logger
from solvers.least_squares import constrained_least_squares, sum_of_squares
from solvers.models import WeightFit
from solvers.options import SolverOptions

logger = get_logger(__name__)


class DimensionMismatchError(ValueError):
    """Raised when data and fitted weights disagree in shape"""


def fit_weights(
    method,
    X,
    y,
    q: Optional[float] = None,
    options: Optional[SolverOptions] = None,
    intercept: Optional[bool] = None
) -> WeightFit:
    """
    Fit counterfactual weights on training rows

    With an intercept, columns of X and y are demeaned over the training rows,
    the constrained problem is solved on the demeaned data and the intercept is
    recovered as mean(y) - mean(X)'w. Without one, the raw data are used.

    Args:
        method: sc, cl, mcl or did
        X: M x N control outcomes
        y: M-vector treated outcomes
        q: l1 radius for CL/MCL (method default when None)
        options: Solver options
        intercept: Override of the method's intercept default

    Returns:
        WeightFit whose objective is the raw-data sum of squared residuals
    """
    method = Method.parse(method)
    constraint = constraint_for(method, q)
    use_intercept = default_intercept(method) if intercept is None else intercept

    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float).ravel()
    if X.ndim == 1:
        X = X.reshape(-1, 1)

    if not use_intercept:
        return constrained_least_squares(X, y, constraint, options)

    if X.shape[0] < 2:
        raise ValueError(f"{method.value} with intercept needs at least 2 training rows")

    x_mean = X.mean(axis=0)
    y_mean = float(y.mean())
    fit = constrained_least_squares(X - x_mean, y - y_mean, constraint, options)

    mu = y_mean - float(x_mean @ fit.w)
    objective = sum_of_squares(X, y - mu, fit.w)

    logger.debug(
        "Weights fitted",
        method=method.value,
        rows=X.shape[0],
        iterations=fit.iterations,
        objective=objective
    )
    return fit.with_intercept(mu, objective)


def residuals(fit: WeightFit, X, y, include_intercept: bool = True) -> np.ndarray:
    """
    Residuals y_t - mu - x_t'w

    Args:
        fit: Fitted weights
        X: rows x N control outcomes
        y: treated outcomes for the same rows
        include_intercept: Set False to force mu = 0

    Returns:
        Residual vector
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float).ravel()
    if X.ndim == 1:
        X = X.reshape(-1, 1)

    if X.shape[1] != fit.n_weights:
        raise DimensionMismatchError(
            f"X has {X.shape[1]} columns but the fit has {fit.n_weights} weights"
        )
    if X.shape[0] != y.size:
        raise DimensionMismatchError(f"X has {X.shape[0]} rows but y has {y.size} entries")

    mu = fit.intercept if (include_intercept and fit.intercept is not None) else 0.0
    return y - mu - X @ fit.w
