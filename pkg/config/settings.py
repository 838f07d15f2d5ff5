"""
Configuration Settings
Application configuration using pydantic-settings
"""

from pydantic_settings import BaseSettings
from typing import Optional
from pathlib import Path

class Settings(BaseSettings):
    """Application settings"""

    PROJECT_NAME: str = "crossfit-synth"
    VERSION: str = "1.0.0"

    # Logging Configuration
    LOG_LEVEL: str = "INFO"
    LOG_FORMAT: str = "text"  # json or text
    LOG_FILE: Optional[str] = None
    LOG_MAX_BYTES: int = 10485760  # 10MB
    LOG_BACKUP_COUNT: int = 5

    # Estimation defaults
    DEFAULT_ALPHA: float = 0.10
    DEFAULT_K: int = 3
    DEFAULT_CL_Q: float = 1.0
    DEFAULT_MCL_Q: float = 1.5
    DEGENERATE_RTOL: float = 1e-10  # sigma_hat below this (relative) is zero

    # Solver defaults
    SOLVER_TOL: float = 1e-10
    SOLVER_MAX_ITER: int = 20000
    SOLVER_PATIENCE: int = 10  # consecutive small-change iterations
    SOLVER_OBJECTIVE_RTOL: float = 1e-12  # objective below rtol * ||y||^2 is an exact fit
    DYKSTRA_TOL: float = 1e-12
    DYKSTRA_MAX_ITER: int = 10000
    POWER_ITERATIONS: int = 50
    POWER_TOL: float = 1e-9
    LIPSCHITZ_SAFETY: float = 1.05

    # Simulation defaults
    SIM_REPS: int = 2000
    SIM_WORKERS: int = 1
    SIM_SEED: int = 0

    # Fixtures
    DATA_DIR: Path = Path(__file__).parent.parent / "data"
    BASQUE_PANEL: str = "basque.csv"
    BASQUE_CALIBRATION: str = "basque_dgp.json"

    # Environment
    ENVIRONMENT: str = "development"  # development, production

    @property
    def basque_panel_path(self) -> Path:
        """Path of the bundled Basque per-capita GDP panel"""
        return self.DATA_DIR / self.BASQUE_PANEL

    @property
    def basque_calibration_path(self) -> Path:
        """Path of the archived Basque DGP calibration"""
        return self.DATA_DIR / self.BASQUE_CALIBRATION

    @property
    def is_production(self) -> bool:
        """Check if running in production"""
        return self.ENVIRONMENT == "production"

    class Config:
        env_file = str(Path(__file__).parent.parent / ".env")
        env_file_encoding = "utf-8"
        case_sensitive = True

# Create singleton instance
_settings: Optional[Settings] = None

def get_settings() -> Settings:
    """Get settings instance (singleton pattern)"""
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings

# Default export
settings = get_settings()
