"""
Estimator Methods
Method identifiers and their default feasible sets
"""

from enum import Enum
from typing import Optional

from config.settings import get_settings
from solvers.models import ConstraintSet

settings = get_settings()


class Method(str, Enum):
    """Weight estimators"""
    SC = "sc"      # synthetic control: simplex, no intercept
    CL = "cl"      # constrained lasso: l1-ball, intercept
    MCL = "mcl"    # modified CL: l1-ball + adding-up, intercept
    DID = "did"    # difference-in-differences: equal weights, intercept

    @classmethod
    def parse(cls, value) -> "Method":
        """Case-insensitive lookup"""
        if isinstance(value, cls):
            return value
        return cls(str(value).strip().lower())


def default_radius(method: Method) -> Optional[float]:
    """Default l1 radius Q for CL/MCL; None for the other methods"""
    method = Method.parse(method)
    if method == Method.CL:
        return settings.DEFAULT_CL_Q
    if method == Method.MCL:
        return settings.DEFAULT_MCL_Q
    return None


def default_intercept(method: Method) -> bool:
    """SC is fitted without an intercept, every other method with one"""
    return Method.parse(method) != Method.SC


def constraint_for(method: Method, q: Optional[float] = None) -> ConstraintSet:
    """
    Feasible set for a method

    Args:
        method: Estimator
        q: l1 radius (CL/MCL only; method default when None)

    Returns:
        ConstraintSet instance
    """
    method = Method.parse(method)
    if method == Method.SC:
        return ConstraintSet.simplex()
    if method == Method.DID:
        return ConstraintSet.fixed_equal()

    radius = default_radius(method) if q is None else q
    if method == Method.CL:
        return ConstraintSet.l1_ball(radius)
    return ConstraintSet.l1_ball_affine(radius)
