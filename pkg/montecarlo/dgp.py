"""
DGP Configuration
Factor-model parameters, trend variants and treated-equation variants for
synthetic panels
"""

from enum import Enum
from pathlib import Path
from typing import List, Optional, Union

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

N_FACTORS = 4


class TrendKind(str, Enum):
    """Non-stationary component added to the control outcomes"""
    NONE = "none"
    COMMON_LINEAR = "common_linear"
    COMMON_RANDOM_WALK = "common_random_walk"
    LINEAR_SPARSE = "linear_sparse"
    RANDOM_WALK_SPARSE = "random_walk_sparse"
    HETEROGENEOUS_LINEAR = "heterogeneous_linear"
    HETEROGENEOUS_DRIFT_RANDOM_WALK = "heterogeneous_drift_random_walk"
    NONSPARSE_LINEAR = "nonsparse_linear"


# Units (1-based) above this index carry the doubled trend in NONSPARSE_LINEAR
NONSPARSE_CUTOFF = 8


class TrendSpec(BaseModel):
    """
    Trend variant theta_it over periods t = 1..T

    Linear variants use the line a + b t; random walks start from 0 and have
    N(0, sd^2) increments. The sparse deviation sits on control unit 1.
    """

    model_config = {"frozen": True}

    kind: TrendKind = TrendKind.NONE
    a: float = 0.0
    b: float = 0.0
    sd: float = Field(1.0, gt=0.0)

    @field_validator('a', 'b')
    @classmethod
    def finite(cls, v: float) -> float:
        if not np.isfinite(v):
            raise ValueError("Trend parameters must be finite")
        return v

    def realize(self, n_periods: int, n_units: int, rng: np.random.Generator) -> np.ndarray:
        """
        Draw the T x N trend matrix

        Only the random-walk variants consume random numbers.
        """
        t = np.arange(1, n_periods + 1, dtype=float)
        line = self.a + self.b * t
        kind = self.kind

        if kind == TrendKind.NONE:
            return np.zeros((n_periods, n_units))

        if kind == TrendKind.COMMON_LINEAR:
            return np.tile(line[:, None], (1, n_units))

        if kind == TrendKind.COMMON_RANDOM_WALK:
            walk = np.cumsum(rng.normal(0.0, self.sd, n_periods))
            return np.tile(walk[:, None], (1, n_units))

        if kind == TrendKind.LINEAR_SPARSE:
            theta = np.tile(line[:, None], (1, n_units))
            theta[:, 0] += line
            return theta

        if kind == TrendKind.RANDOM_WALK_SPARSE:
            common = np.cumsum(rng.normal(0.0, self.sd, n_periods))
            deviation = np.cumsum(rng.normal(0.0, self.sd, n_periods))
            theta = np.tile(common[:, None], (1, n_units))
            theta[:, 0] += deviation
            return theta

        units = np.arange(1, n_units + 1, dtype=float)

        if kind == TrendKind.HETEROGENEOUS_LINEAR:
            return units[None, :] + np.outer(t, units)

        if kind == TrendKind.HETEROGENEOUS_DRIFT_RANDOM_WALK:
            # theta_it = i + theta_i,t-1 + xi_it with theta_i0 = 0
            steps = units[None, :] + rng.normal(0.0, self.sd, (n_periods, n_units))
            return np.cumsum(steps, axis=0)

        theta = np.tile(line[:, None], (1, n_units))
        theta[:, units > NONSPARSE_CUTOFF] *= 2.0
        return theta


class MuWKind(str, Enum):
    """Treated-equation variants"""
    SC_FIT = "sc_fit"
    CL_FIT = "cl_fit"
    DID_LIKE = "did_like"
    ULTRA_SPARSE = "ultra_sparse"
    MISSPEC = "misspec"
    TWO_POINT = "two_point"
    FIXED = "fixed"


class TreatedEquation(BaseModel):
    """Intercept and weights of Y_t = mu + X_t'w + u_t"""

    model_config = {"frozen": True}

    mu: float = 0.0
    w: List[float]

    @property
    def weights(self) -> np.ndarray:
        return np.asarray(self.w, dtype=float)


class TrendLine(BaseModel):
    """Least-squares line a + b t through the control-average series"""

    model_config = {"frozen": True}

    a: float
    b: float


class MuWSpec(BaseModel):
    """
    Treated-equation variant

    SC_FIT and CL_FIT read the calibrated fits stored on the DgpConfig; FIXED
    uses `equation` as given. `mu` overrides the intercept of the resolved
    equation.
    """

    model_config = {"frozen": True}

    kind: MuWKind
    mu: Optional[float] = None
    equation: Optional[TreatedEquation] = None

    @model_validator(mode='after')
    def check_fixed(self) -> "MuWSpec":
        if self.kind == MuWKind.FIXED and self.equation is None:
            raise ValueError("FIXED treated equation needs `equation`")
        return self

    @classmethod
    def fixed(cls, mu: float, w) -> "MuWSpec":
        return cls(kind=MuWKind.FIXED, equation=TreatedEquation(mu=mu, w=list(map(float, w))))

    def resolve(self, dgp: "DgpConfig") -> TreatedEquation:
        """Concrete (mu, w) for a configuration with N controls"""
        n = dgp.n_units
        kind = self.kind

        if kind == MuWKind.SC_FIT:
            if dgp.sc_fit is None:
                raise ValueError("DgpConfig carries no SC fit")
            equation = TreatedEquation(mu=0.0, w=dgp.sc_fit.w)
        elif kind == MuWKind.CL_FIT:
            if dgp.cl_fit is None:
                raise ValueError("DgpConfig carries no CL fit")
            equation = dgp.cl_fit
        elif kind == MuWKind.DID_LIKE:
            equation = TreatedEquation(mu=1.0, w=[1.0 / n] * n)
        elif kind == MuWKind.ULTRA_SPARSE:
            equation = TreatedEquation(mu=-1.0, w=[-1.0] + [0.0] * (n - 1))
        elif kind == MuWKind.MISSPEC:
            equation = TreatedEquation(mu=-1.0, w=[-(i / n) for i in range(1, n + 1)])
        elif kind == MuWKind.TWO_POINT:
            if n < 2:
                raise ValueError("Two-point weights need at least 2 controls")
            equation = TreatedEquation(mu=0.0, w=[1.25, -0.25] + [0.0] * (n - 2))
        else:
            equation = self.equation

        if len(equation.w) != n:
            raise ValueError(f"Weight vector has {len(equation.w)} entries for {n} controls")
        if self.mu is not None:
            equation = TreatedEquation(mu=self.mu, w=equation.w)
        return equation


class DgpConfig(BaseModel):
    """
    Factor-model DGP for synthetic panels

    Controls: Y_it = offset_i + theta_it + lambda_i'f_t + eta_it with
    f_t ~ N(0, sigma_f) and eta_it an AR(1) with coefficient ar_rho[i] and
    innovation SD ar_sigma[i]. Treated: Y_t = mu + X_t'w + u_t + effect 1{t > t0},
    u_t an AR(1) with (rho_u, sigma_v).
    """

    model_config = {"frozen": True}

    n_units: int = Field(..., ge=1)
    t0: int = Field(..., ge=2)
    t1: int = Field(..., ge=1)
    loadings: List[List[float]]
    sigma_f: List[List[float]]
    ar_rho: List[float]
    ar_sigma: List[float]
    rho_u: float = Field(..., gt=-1.0, lt=1.0)
    sigma_v: float = Field(..., ge=0.0)
    trend: TrendSpec = Field(default_factory=TrendSpec)
    effect: float = 0.0
    unit_offsets: Optional[List[float]] = None
    sc_fit: Optional[TreatedEquation] = None
    cl_fit: Optional[TreatedEquation] = None
    trend_line: Optional[TrendLine] = None

    @model_validator(mode='after')
    def check_shapes(self) -> "DgpConfig":
        """Dimensions, stationarity and covariance checks"""
        n = self.n_units
        loadings = np.asarray(self.loadings, dtype=float)
        if loadings.shape != (n, N_FACTORS):
            raise ValueError(f"loadings must be {n} x {N_FACTORS}, got {loadings.shape}")

        cov = np.asarray(self.sigma_f, dtype=float)
        if cov.shape != (N_FACTORS, N_FACTORS):
            raise ValueError(f"sigma_f must be {N_FACTORS} x {N_FACTORS}, got {cov.shape}")
        if not np.allclose(cov, cov.T, rtol=0.0, atol=1e-10 * (1.0 + np.abs(cov).max())):
            raise ValueError("sigma_f must be symmetric")
        if np.linalg.eigvalsh(cov).min() < -1e-10 * (1.0 + np.abs(cov).max()):
            raise ValueError("sigma_f must be positive semidefinite")

        for name in ('ar_rho', 'ar_sigma'):
            if len(getattr(self, name)) != n:
                raise ValueError(f"{name} must have {n} entries")
        if any(abs(rho) >= 1.0 for rho in self.ar_rho):
            raise ValueError("AR coefficients must lie strictly inside (-1, 1)")
        if any(sd < 0.0 for sd in self.ar_sigma):
            raise ValueError("Innovation SDs must be non-negative")
        if self.unit_offsets is not None and len(self.unit_offsets) != n:
            raise ValueError(f"unit_offsets must have {n} entries")
        for fit in (self.sc_fit, self.cl_fit):
            if fit is not None and len(fit.w) != n:
                raise ValueError(f"Calibrated weights must have {n} entries")
        return self

    @property
    def n_periods(self) -> int:
        return self.t0 + self.t1

    @property
    def loading_matrix(self) -> np.ndarray:
        return np.asarray(self.loadings, dtype=float)

    @property
    def factor_cov(self) -> np.ndarray:
        return np.asarray(self.sigma_f, dtype=float)

    @property
    def offsets(self) -> np.ndarray:
        if self.unit_offsets is None:
            return np.zeros(self.n_units)
        return np.asarray(self.unit_offsets, dtype=float)

    def with_updates(self, **changes) -> "DgpConfig":
        """Validated copy with some fields replaced"""
        data = self.model_dump()
        data.update(changes)
        return DgpConfig.model_validate(data)

    def to_json(self, indent: Optional[int] = 2) -> str:
        return self.model_dump_json(indent=indent)

    @classmethod
    def from_json(cls, text: Union[str, bytes]) -> "DgpConfig":
        return cls.model_validate_json(text)

    def save(self, path: Union[str, Path]) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")

    @classmethod
    def load(cls, path: Union[str, Path]) -> "DgpConfig":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))

    def summary(self) -> dict:
        """Headline calibration figures"""
        return {
            'n_units': self.n_units,
            't0': self.t0,
            't1': self.t1,
            'median_rho': float(np.median(self.ar_rho)),
            'rho_u': self.rho_u,
            'sigma_v': self.sigma_v,
            'trend': self.trend.kind.value,
        }
