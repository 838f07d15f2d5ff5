"""
Scenario Catalog
Predefined DGP designs built from a calibrated configuration
"""

from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from montecarlo.dgp import DgpConfig, MuWKind, MuWSpec, TrendKind, TrendSpec
from montecarlo.errors import CalibrationError, UnknownScenarioError

# Intercept shift of the misspecified bias-study design
BIAS_SHIFT = 0.3

SCENARIOS: Dict[str, Dict[str, Any]] = {
    '0.1': {
        'description': 'Bias study, correct specification: mu=0, SC weights, iid treated error',
        'trend': TrendKind.NONE,
        'mu_w': MuWKind.SC_FIT,
        'iid_error': True,
    },
    '0.2': {
        'description': 'Bias study, misspecification: mu=0.3, SC weights, shifted donors',
        'trend': TrendKind.NONE,
        'mu_w': MuWKind.SC_FIT,
        'mu': BIAS_SHIFT,
        'iid_error': True,
        'shift_donors': True,
    },
    '1.1': {
        'description': 'Synthetic control',
        'trend': TrendKind.NONE,
        'mu_w': MuWKind.SC_FIT,
    },
    '1.2': {
        'description': 'Constrained lasso',
        'trend': TrendKind.NONE,
        'mu_w': MuWKind.CL_FIT,
    },
    '1.3': {
        'description': 'Difference-in-differences',
        'trend': TrendKind.NONE,
        'mu_w': MuWKind.DID_LIKE,
    },
    '1.4': {
        'description': 'Ultra-sparse',
        'trend': TrendKind.NONE,
        'mu_w': MuWKind.ULTRA_SPARSE,
    },
    '1.5': {
        'description': 'Misspecification',
        'trend': TrendKind.NONE,
        'mu_w': MuWKind.MISSPEC,
    },
    '2.1': {
        'description': 'Common deterministic trend',
        'trend': TrendKind.COMMON_LINEAR,
        'mu_w': MuWKind.SC_FIT,
    },
    '2.2': {
        'description': 'Common random walk',
        'trend': TrendKind.COMMON_RANDOM_WALK,
        'mu_w': MuWKind.SC_FIT,
    },
    '2.3': {
        'description': 'Deterministic trend + sparse deviation',
        'trend': TrendKind.LINEAR_SPARSE,
        'mu_w': MuWKind.SC_FIT,
    },
    '2.4': {
        'description': 'Random walk + sparse deviation',
        'trend': TrendKind.RANDOM_WALK_SPARSE,
        'mu_w': MuWKind.SC_FIT,
    },
    '2.5': {
        'description': 'Heterogeneous deterministic trends',
        'trend': TrendKind.HETEROGENEOUS_LINEAR,
        'mu_w': MuWKind.SC_FIT,
    },
    '2.6': {
        'description': 'Random walks with heterogeneous drifts',
        'trend': TrendKind.HETEROGENEOUS_DRIFT_RANDOM_WALK,
        'mu_w': MuWKind.SC_FIT,
    },
    '2.7': {
        'description': 'Non-sparse deviation',
        'trend': TrendKind.NONSPARSE_LINEAR,
        'mu_w': MuWKind.SC_FIT,
    },
    '2.8': {
        'description': 'Common trend + misspecification I',
        'trend': TrendKind.COMMON_LINEAR,
        'mu_w': MuWKind.TWO_POINT,
    },
    '2.9': {
        'description': 'Common trend + misspecification II',
        'trend': TrendKind.COMMON_LINEAR,
        'mu_w': MuWKind.MISSPEC,
    },
}

_LINEAR_TRENDS = {
    TrendKind.COMMON_LINEAR,
    TrendKind.LINEAR_SPARSE,
    TrendKind.NONSPARSE_LINEAR,
}


def list_scenarios() -> List[str]:
    """All catalog ids"""
    return list(SCENARIOS.keys())


def get_scenario(dgp_id: str) -> Dict[str, Any]:
    """Catalog entry for an id"""
    try:
        return SCENARIOS[dgp_id]
    except KeyError:
        raise UnknownScenarioError(dgp_id, SCENARIOS) from None


def scenario(
    dgp_id: str,
    config: DgpConfig,
    t0: Optional[int] = None
) -> Tuple[DgpConfig, MuWSpec]:
    """
    Build the DGP and treated-equation variant of a catalog design

    Args:
        dgp_id: Catalog id, e.g. '1.1' or '2.5'
        config: Calibrated configuration
        t0: Optional pre-period length override (e.g. 300)

    Returns:
        (DgpConfig, MuWSpec)

    Raises:
        UnknownScenarioError: id not in the catalog
        CalibrationError: the design needs calibrated pieces the config lacks
    """
    entry = get_scenario(dgp_id)
    trend_kind: TrendKind = entry['trend']

    if trend_kind in _LINEAR_TRENDS:
        if config.trend_line is None:
            raise CalibrationError(f"DGP {dgp_id} needs the calibrated control-average trend line")
        trend = TrendSpec(kind=trend_kind, a=config.trend_line.a, b=config.trend_line.b)
    else:
        trend = TrendSpec(kind=trend_kind)

    mu_kind: MuWKind = entry['mu_w']
    if mu_kind == MuWKind.SC_FIT and config.sc_fit is None:
        raise CalibrationError(f"DGP {dgp_id} needs calibrated SC weights")
    if mu_kind == MuWKind.CL_FIT and config.cl_fit is None:
        raise CalibrationError(f"DGP {dgp_id} needs calibrated CL weights")
    spec = MuWSpec(kind=mu_kind, mu=entry.get('mu'))

    changes: Dict[str, Any] = {'trend': trend}
    if t0 is not None:
        changes['t0'] = t0
    if entry.get('iid_error'):
        changes['sigma_v'] = config.sigma_v / np.sqrt(1.0 - config.rho_u ** 2)
        changes['rho_u'] = 0.0
    if entry.get('shift_donors'):
        w = config.sc_fit.weights
        changes['unit_offsets'] = np.where(w > 0, BIAS_SHIFT, 0.0).tolist()

    return config.with_updates(**changes), spec
