"""
Monte Carlo
DGP calibration, synthetic panel generation, scenario catalog and coverage experiments
"""

from montecarlo.calibration import FactorFit, calibrate, detrend, factor_decomposition, fit_ar1
from montecarlo.catalog import SCENARIOS, get_scenario, list_scenarios, scenario
from montecarlo.coverage import (
    CoverageRow,
    CoverageTable,
    LocationSize,
    run_coverage,
    run_location_size,
)
from montecarlo.dgp import (
    DgpConfig,
    MuWKind,
    MuWSpec,
    TreatedEquation,
    TrendKind,
    TrendLine,
    TrendSpec,
)
from montecarlo.errors import CalibrationError, UnknownScenarioError
from montecarlo.executor import ReplicationExecutor
from montecarlo.generator import generate_panel, replication_rng, simulate_ar1

__all__ = [
    'FactorFit',
    'calibrate',
    'detrend',
    'factor_decomposition',
    'fit_ar1',
    'SCENARIOS',
    'get_scenario',
    'list_scenarios',
    'scenario',
    'CoverageRow',
    'CoverageTable',
    'LocationSize',
    'run_coverage',
    'run_location_size',
    'DgpConfig',
    'MuWKind',
    'MuWSpec',
    'TreatedEquation',
    'TrendKind',
    'TrendLine',
    'TrendSpec',
    'CalibrationError',
    'UnknownScenarioError',
    'ReplicationExecutor',
    'generate_panel',
    'replication_rng',
    'simulate_ar1',
]
