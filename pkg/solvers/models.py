"""
Solver Models
Feasible weight sets and fitted-weight results
"""

from enum import Enum
from typing import Any, Dict, Optional

import numpy as np

from solvers.errors import InfeasibleConstraintError
from solvers.options import SolverOptions
from solvers.projections import project_l1_affine, project_l1_ball, project_simplex


class ConstraintKind(str, Enum):
    """Feasible set variants"""
    SIMPLEX = "simplex"
    L1_BALL = "l1_ball"
    L1_BALL_AFFINE = "l1_ball_affine"
    FIXED_EQUAL = "fixed_equal"


class ConstraintSet:
    """
    Feasible set a weight estimator optimises over

    - SIMPLEX: w_i >= 0, sum w_i = 1
    - L1_BALL: ||w||_1 <= q
    - L1_BALL_AFFINE: ||w||_1 <= q, sum w_i = 1 (requires q >= 1)
    - FIXED_EQUAL: the single point (1/N, ..., 1/N)
    """

    def __init__(self, kind: ConstraintKind, q: Optional[float] = None):
        kind = ConstraintKind(kind)
        if kind in (ConstraintKind.L1_BALL, ConstraintKind.L1_BALL_AFFINE):
            if q is None:
                raise InfeasibleConstraintError(f"{kind.value} needs a radius q")
            q = float(q)
            if not np.isfinite(q) or q <= 0:
                raise InfeasibleConstraintError(f"Radius must be positive and finite, got {q}")
            if kind == ConstraintKind.L1_BALL_AFFINE and q < 1.0:
                raise InfeasibleConstraintError(
                    f"l1-ball with adding-up constraint is empty for q={q} < 1"
                )
        else:
            q = None

        self.kind = kind
        self.q = q

    @classmethod
    def simplex(cls) -> "ConstraintSet":
        return cls(ConstraintKind.SIMPLEX)

    @classmethod
    def l1_ball(cls, q: float) -> "ConstraintSet":
        return cls(ConstraintKind.L1_BALL, q)

    @classmethod
    def l1_ball_affine(cls, q: float) -> "ConstraintSet":
        return cls(ConstraintKind.L1_BALL_AFFINE, q)

    @classmethod
    def fixed_equal(cls) -> "ConstraintSet":
        return cls(ConstraintKind.FIXED_EQUAL)

    def project(self, v, options: Optional[SolverOptions] = None) -> np.ndarray:
        """Euclidean projection of v onto this set"""
        if self.kind == ConstraintKind.SIMPLEX:
            return project_simplex(v)
        if self.kind == ConstraintKind.L1_BALL:
            return project_l1_ball(v, self.q)
        if self.kind == ConstraintKind.L1_BALL_AFFINE:
            return project_l1_affine(v, self.q, options)
        n = np.asarray(v).size
        return np.full(n, 1.0 / n)

    def contains(self, w, tol: float = 1e-10) -> bool:
        """Check feasibility of w up to tol"""
        w = np.asarray(w, dtype=float).ravel()
        if self.kind == ConstraintKind.SIMPLEX:
            return bool(np.all(w >= -tol) and abs(w.sum() - 1.0) <= tol)
        if self.kind == ConstraintKind.L1_BALL:
            return bool(np.abs(w).sum() <= self.q + tol)
        if self.kind == ConstraintKind.L1_BALL_AFFINE:
            return bool(np.abs(w).sum() <= self.q + tol and abs(w.sum() - 1.0) <= tol)
        return bool(np.allclose(w, 1.0 / w.size, rtol=0.0, atol=tol))

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary"""
        return {'kind': self.kind.value, 'q': self.q}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ConstraintSet):
            return NotImplemented
        return self.kind == other.kind and self.q == other.q

    def __repr__(self) -> str:
        if self.q is None:
            return f"ConstraintSet({self.kind.value})"
        return f"ConstraintSet({self.kind.value}, q={self.q})"


class WeightFit:
    """Estimated weights (and optional intercept) with solver diagnostics"""

    def __init__(
        self,
        w: np.ndarray,
        constraint: ConstraintSet,
        objective: float,
        iterations: int,
        converged: bool,
        intercept: Optional[float] = None
    ):
        self.w = np.asarray(w, dtype=float)
        self.w.setflags(write=False)
        self.constraint = constraint
        self.objective = float(objective)
        self.iterations = int(iterations)
        self.converged = bool(converged)
        self.intercept = None if intercept is None else float(intercept)

    @property
    def n_weights(self) -> int:
        return self.w.size

    def predict(self, X) -> np.ndarray:
        """Counterfactual fit mu + X w (mu is 0 when absent)"""
        mu = self.intercept or 0.0
        return mu + np.asarray(X, dtype=float) @ self.w

    def with_intercept(self, intercept: Optional[float], objective: float) -> "WeightFit":
        """Copy with a recovered intercept and the objective on raw data"""
        return WeightFit(
            w=self.w,
            constraint=self.constraint,
            objective=objective,
            iterations=self.iterations,
            converged=self.converged,
            intercept=intercept,
        )

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary"""
        return {
            'w': self.w.tolist(),
            'intercept': self.intercept,
            'objective': self.objective,
            'iterations': self.iterations,
            'converged': self.converged,
            'constraint': self.constraint.to_dict(),
        }
