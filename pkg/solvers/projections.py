"""
Euclidean Projections
Exact projections onto the simplex, the l1-ball and the l1-ball intersected
with the adding-up hyperplane
"""

from typing import Optional

import numpy as np

from monitoring import get_logger
from solvers.errors import InfeasibleConstraintError, SolverConvergenceError
from solvers.options import SolverOptions

logger = get_logger(__name__)

# Feasibility slack promised to callers of project_l1_affine
AFFINE_FEASIBILITY_TOL = 1e-10


def _as_vector(v) -> np.ndarray:
    vec = np.asarray(v, dtype=float).ravel()
    if vec.size == 0:
        raise ValueError("Cannot project an empty vector")
    return vec


def _simplex_threshold(v: np.ndarray, radius: float) -> np.ndarray:
    """Sort-and-threshold projection onto {w >= 0, sum(w) = radius}"""
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - radius
    ind = np.arange(1, v.size + 1)
    support = u - css / ind > 0
    rho = ind[support][-1]
    theta = css[support][-1] / rho
    return np.maximum(v - theta, 0.0)


def project_simplex(v) -> np.ndarray:
    """
    Project onto the unit simplex {w : w_i >= 0, sum w_i = 1}

    Args:
        v: Point to project (N >= 1)

    Returns:
        The closest point of the simplex in Euclidean norm
    """
    return _simplex_threshold(_as_vector(v), 1.0)


def project_l1_ball(v, q: float) -> np.ndarray:
    """
    Project onto the l1-ball {w : ||w||_1 <= q}

    Points already inside the ball are returned unchanged (as a copy).

    Args:
        v: Point to project
        q: Radius, must be positive

    Returns:
        The closest point of the ball
    """
    if not q > 0:
        raise InfeasibleConstraintError(f"l1-ball radius must be positive, got {q}")

    vec = _as_vector(v)
    if np.abs(vec).sum() <= q:
        return vec.copy()
    return np.sign(vec) * _simplex_threshold(np.abs(vec), q)


def _project_hyperplane(v: np.ndarray) -> np.ndarray:
    """Project onto {w : sum w_i = 1}"""
    return v - (v.sum() - 1.0) / v.size


def project_l1_affine(v, q: float, options: Optional[SolverOptions] = None) -> np.ndarray:
    """
    Project onto {w : ||w||_1 <= q, sum w_i = 1} with Dykstra's algorithm

    Alternates between the l1-ball and the adding-up hyperplane, carrying the
    Dykstra correction terms so that the limit is the Euclidean projection
    onto the intersection. For q = 1 the intersection is the unit simplex and
    the simplex projection is returned directly.

    Args:
        v: Point to project
        q: l1 radius, must be at least 1 (the set is empty otherwise)
        options: Solver options (dykstra_tol, dykstra_max_iter)

    Returns:
        The projected point

    Raises:
        InfeasibleConstraintError: q < 1
        SolverConvergenceError: no convergence within dykstra_max_iter
    """
    if not q >= 1.0:
        raise InfeasibleConstraintError(
            f"{{||w||_1 <= {q}, sum(w) = 1}} is empty for q < 1"
        )

    options = options or SolverOptions()
    vec = _as_vector(v)

    if q == 1.0:
        return _simplex_threshold(vec, 1.0)

    if abs(vec.sum() - 1.0) <= AFFINE_FEASIBILITY_TOL and np.abs(vec).sum() <= q:
        return vec.copy()

    x = vec.copy()
    p = np.zeros_like(x)
    r = np.zeros_like(x)
    change = np.inf

    for iteration in range(1, options.dykstra_max_iter + 1):
        y = project_l1_ball(x + p, q)
        p = x + p - y
        x_new = _project_hyperplane(y + r)
        r = y + r - x_new

        change = float(np.max(np.abs(x_new - x)))
        x = x_new

        if change < options.dykstra_tol:
            feasible = (
                abs(x.sum() - 1.0) <= AFFINE_FEASIBILITY_TOL
                and np.abs(x).sum() <= q + AFFINE_FEASIBILITY_TOL
            )
            if feasible:
                return x

    logger.warning(
        "Dykstra projection did not converge",
        iterations=options.dykstra_max_iter,
        last_change=change,
        radius=q
    )
    raise SolverConvergenceError(
        f"Dykstra projection did not converge in {options.dykstra_max_iter} iterations",
        iterations=options.dykstra_max_iter,
        residual=change,
    )
