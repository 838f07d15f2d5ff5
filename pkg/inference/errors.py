"""
Inference Errors
Exceptions raised while combining fold estimates
"""

from typing import Any, Optional


class DegenerateVarianceError(ArithmeticError):
    """
    Raised when the fold estimates have (numerically) zero dispersion

    The self-normalized statistic is undefined in that case. `partial` holds a
    CrossFitResult with the point estimates filled in and the inference fields
    left as None, when one is available.
    """

    def __init__(self, message: str, tau_hat: Optional[float] = None, partial: Optional[Any] = None):
        super().__init__(message)
        self.tau_hat = tau_hat
        self.partial = partial


class FoldFitError(RuntimeError):
    """Raised when the weight fit of one fold fails"""

    def __init__(self, fold: int, error: Exception):
        super().__init__(f"Weight fit failed on fold {fold}: {error}")
        self.fold = fold
