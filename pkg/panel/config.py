"""
Estimation Configuration
Method, fold count and test parameters for a cross-fitted estimate
"""

from enum import Enum
from typing import Any, Dict, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from config.settings import get_settings
from estimators.methods import Method, default_intercept, default_radius
from panel.models import Panel
from solvers.options import SolverOptions

settings = get_settings()


class ConfigurationError(ValueError):
    """Raised when an estimation configuration does not fit the panel"""


class BlockPosition(str, Enum):
    """Which pre-period blocks serve as evaluation folds"""
    FIRST = "first"
    LAST = "last"


class EstimationConfig(BaseModel):
    """Configuration of a cross-fitted ATT estimate"""

    model_config = {"frozen": True}

    method: Method = Method.SC
    k_folds: int = Field(default_factory=lambda: settings.DEFAULT_K, ge=2)
    alpha: float = Field(default_factory=lambda: settings.DEFAULT_ALPHA, gt=0.0, lt=1.0)
    q: Optional[float] = Field(None, gt=0.0, description="l1 radius for CL/MCL")
    tau0: float = 0.0
    intercept: Optional[bool] = Field(None, description="Override of the method's intercept default")
    block_position: BlockPosition = BlockPosition.FIRST
    solver: SolverOptions = Field(default_factory=SolverOptions)

    @field_validator('method', mode='before')
    @classmethod
    def parse_method(cls, v):
        """Accept method names in any case"""
        return Method.parse(v)

    @model_validator(mode='after')
    def check_radius(self) -> "EstimationConfig":
        """MCL needs Q >= 1 for a nonempty feasible set"""
        if self.method == Method.MCL and self.radius < 1.0:
            raise ValueError(f"MCL requires q >= 1, got q={self.radius}")
        return self

    @property
    def radius(self) -> Optional[float]:
        """Effective Q (method default when not given); None for SC/DID"""
        if self.method not in (Method.CL, Method.MCL):
            return None
        return self.q if self.q is not None else default_radius(self.method)

    @property
    def uses_intercept(self) -> bool:
        """Whether fold fits carry an intercept"""
        return default_intercept(self.method) if self.intercept is None else self.intercept

    def validate_for(self, panel: Panel) -> None:
        """Check the panel-dependent invariants"""
        self.validate_dims(panel.t0, panel.t1)

    def validate_dims(self, t0: int, t1: int) -> None:
        """
        Check the fold invariants against T0 pre- and T1 post-treatment periods

        Raises:
            ConfigurationError: K > T0, or too few training rows for an intercept
        """
        if self.k_folds > t0:
            raise ConfigurationError(
                f"K={self.k_folds} folds need at least K pre-treatment periods, T0={t0}"
            )
        block = min(t0 // self.k_folds, t1)
        needed = 2 if self.uses_intercept else 1
        if t0 - block < needed:
            raise ConfigurationError(
                f"Training sets of {t0 - block} rows are too small for {self.method.value}"
            )

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary"""
        return {
            'method': self.method.value,
            'K': self.k_folds,
            'alpha': self.alpha,
            'q': self.radius,
            'tau0': self.tau0,
            'block_position': self.block_position.value,
        }
