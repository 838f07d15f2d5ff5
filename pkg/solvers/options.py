"""
Solver Options
Tolerances and iteration caps for the projection and FISTA routines
"""

from pydantic import BaseModel, Field

from config.settings import get_settings

settings = get_settings()


class SolverOptions(BaseModel):
    """Numerical controls shared by every weight estimator"""

    model_config = {"frozen": True}

    tol: float = Field(default_factory=lambda: settings.SOLVER_TOL, gt=0,
                       description="Relative objective-change stop threshold")
    max_iter: int = Field(default_factory=lambda: settings.SOLVER_MAX_ITER, gt=0)
    patience: int = Field(default_factory=lambda: settings.SOLVER_PATIENCE, gt=0,
                          description="Consecutive small-change iterations before stopping")
    objective_rtol: float = Field(default_factory=lambda: settings.SOLVER_OBJECTIVE_RTOL, ge=0,
                                  description="Stop once the objective is below this fraction of ||y||^2")
    dykstra_tol: float = Field(default_factory=lambda: settings.DYKSTRA_TOL, gt=0)
    dykstra_max_iter: int = Field(default_factory=lambda: settings.DYKSTRA_MAX_ITER, gt=0)
    power_iterations: int = Field(default_factory=lambda: settings.POWER_ITERATIONS, gt=0)
    power_tol: float = Field(default_factory=lambda: settings.POWER_TOL, gt=0)
    lipschitz_safety: float = Field(default_factory=lambda: settings.LIPSCHITZ_SAFETY, ge=1.0)
