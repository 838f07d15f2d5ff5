"""
Cross-Fit Results
Per-fold estimates, pooled ATT and the self-normalized inference around it
"""

import math
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field

from solvers.models import WeightFit


def significant(value: Optional[float], digits: int = 6) -> Optional[float]:
    """Round to `digits` significant digits; None and non-finite values map to None"""
    if value is None or not math.isfinite(value):
        return None
    return float(f"{value:.{digits}g}")


class CrossFitSummary(BaseModel):
    """JSON document of a cross-fitted estimate"""

    method: str
    K: int = Field(..., ge=2)
    r: int = Field(..., ge=1)
    alpha: float
    tau0: float
    att: float
    tau_k: List[float]
    sigma_hat: Optional[float] = None
    t_stat: Optional[float] = None
    df: int
    p_value: Optional[float] = Field(None, ge=0.0, le=1.0)
    ci: List[Optional[float]] = Field(..., min_length=2, max_length=2)


class CrossFitResult:
    """
    Outcome of crossfit_att

    tau_hat is the plain mean of tau_k. Inference fields (sigma_hat, t_stat,
    p_value, ci) are None for a partial result attached to a
    DegenerateVarianceError.
    """

    def __init__(
        self,
        method: str,
        k: int,
        r: int,
        t1: int,
        alpha: float,
        tau0: float,
        tau_k,
        fits: List[WeightFit],
        sigma_hat: Optional[float] = None,
        t_stat: Optional[float] = None,
        p_value: Optional[float] = None,
        ci: Optional[Tuple[float, float]] = None
    ):
        self.method = method
        self.k = k
        self.r = r
        self.t1 = t1
        self.alpha = alpha
        self.tau0 = tau0
        self.tau_k = np.asarray(tau_k, dtype=float)
        self.tau_hat = float(self.tau_k.mean())
        self.fits = fits
        self.sigma_hat = sigma_hat
        self.t_stat = t_stat
        self.p_value = p_value
        self.ci = ci

    @property
    def df(self) -> int:
        return self.k - 1

    @property
    def is_partial(self) -> bool:
        return self.sigma_hat is None

    @property
    def ci_length(self) -> Optional[float]:
        if self.ci is None:
            return None
        return self.ci[1] - self.ci[0]

    def statistic_at(self, tau0: float) -> float:
        """Self-normalized statistic sqrt(K) (tau_hat - tau0) / sigma_hat for another null"""
        if self.sigma_hat is None:
            raise ValueError("Partial result carries no variance estimate")
        return math.sqrt(self.k) * (self.tau_hat - tau0) / self.sigma_hat

    def covers(self, tau: float) -> bool:
        """Whether the confidence interval contains tau"""
        if self.ci is None:
            return False
        return self.ci[0] <= tau <= self.ci[1]

    def summary(self) -> CrossFitSummary:
        """Schema view with 6 significant digits"""
        ci = self.ci or (None, None)
        return CrossFitSummary(
            method=self.method,
            K=self.k,
            r=self.r,
            alpha=significant(self.alpha),
            tau0=significant(self.tau0),
            att=significant(self.tau_hat),
            tau_k=[significant(v) for v in self.tau_k],
            sigma_hat=significant(self.sigma_hat),
            t_stat=significant(self.t_stat),
            df=self.df,
            p_value=significant(self.p_value),
            ci=[significant(ci[0]), significant(ci[1])],
        )

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary"""
        return self.summary().model_dump()

    def to_json(self, indent: Optional[int] = 2) -> str:
        """Serialize to the JSON document"""
        return self.summary().model_dump_json(indent=indent)

    def __repr__(self) -> str:
        return (
            f"CrossFitResult(method={self.method!r}, K={self.k}, att={self.tau_hat:.6g}, "
            f"ci={self.ci})"
        )
