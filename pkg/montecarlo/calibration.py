"""
Calibration
Fits the factor-model DGP to an observed panel after removing the
contemporaneous control average
"""

from typing import NamedTuple, Tuple

import numpy as np

from estimators.methods import Method
from estimators.weights import fit_weights, residuals
from monitoring import get_logger
from montecarlo.dgp import N_FACTORS, DgpConfig, TreatedEquation, TrendLine, TrendSpec
from montecarlo.errors import CalibrationError
from panel.models import Panel

logger = get_logger(__name__)

AR_CLAMP = 0.99
MIN_CONTROLS = N_FACTORS + 1
MIN_PERIODS = 10


class FactorFit(NamedTuple):
    """Principal-component factor model of a T x N matrix"""
    scores: np.ndarray
    loadings: np.ndarray
    intercepts: np.ndarray
    residuals: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return self.intercepts[None, :] + self.scores @ self.loadings.T


def detrend(panel: Panel) -> Tuple[np.ndarray, np.ndarray]:
    """
    Subtract the cross-sectional mean of the control outcomes at each period

    The treated unit is not part of the average.

    Returns:
        (de-trended controls T x N, de-trended treated series T)
    """
    average = panel.controls.mean(axis=1)
    return panel.controls - average[:, None], panel.treated - average


def factor_decomposition(matrix: np.ndarray, n_factors: int = N_FACTORS) -> FactorFit:
    """
    Top principal components as factors, loadings by least squares

    Raises:
        CalibrationError: numerical rank below n_factors
    """
    matrix = np.asarray(matrix, dtype=float)
    centered = matrix - matrix.mean(axis=0)
    u, s, _ = np.linalg.svd(centered, full_matrices=False)

    tol = max(centered.shape) * np.finfo(float).eps * (s[0] if s.size else 0.0)
    rank = int(np.sum(s > tol))
    if rank < n_factors:
        raise CalibrationError(
            f"De-trended controls have rank {rank}, need {n_factors} factors"
        )

    scores = u[:, :n_factors] * s[:n_factors]
    design = np.column_stack([np.ones(matrix.shape[0]), scores])
    coef, *_ = np.linalg.lstsq(design, matrix, rcond=None)
    fit = FactorFit(
        scores=scores,
        loadings=coef[1:].T,
        intercepts=coef[0],
        residuals=np.empty(0),
    )
    return fit._replace(residuals=matrix - fit.reconstruct())


def fit_ar1(series: np.ndarray, label: str = "") -> Tuple[float, float]:
    """
    AR(1) by least squares without intercept

    Coefficients at or beyond +/-1 are clamped to +/-0.99 with a warning.

    Returns:
        (rho, innovation SD)
    """
    series = np.asarray(series, dtype=float)
    lagged, current = series[:-1], series[1:]
    denom = float(lagged @ lagged)
    rho = float(lagged @ current) / denom if denom > 0.0 else 0.0

    if abs(rho) >= 1.0:
        clamped = float(np.sign(rho) * AR_CLAMP)
        logger.warning("AR coefficient clamped", unit=label, rho=rho, clamped=clamped)
        rho = clamped

    innovations = current - rho * lagged
    sigma = float(np.std(innovations, ddof=1)) if innovations.size > 1 else 0.0
    return rho, sigma


def trend_line(series: np.ndarray) -> TrendLine:
    """Least-squares line a + b t for t = 1..T"""
    t = np.arange(1, len(series) + 1, dtype=float)
    design = np.column_stack([np.ones_like(t), t])
    (a, b), *_ = np.linalg.lstsq(design, np.asarray(series, dtype=float), rcond=None)
    return TrendLine(a=float(a), b=float(b))


def calibrate(panel: Panel) -> DgpConfig:
    """
    Calibrate a four-factor DGP to a panel

    1. De-trend by the control average.
    2. Factors: top principal components of the de-trended controls;
       sigma_f is their sample covariance.
    3. Loadings by least squares of each de-trended control on the factors.
    4. AR(1) on the factor-model residuals gives (rho_i, sigma_i).
    5. SC and CL (q = 1) fits on the de-trended pre-period.
    6. AR(1) on the pre-period SC residual gives (rho_u, sigma_v).
    7. Trend line through the raw control average.

    Args:
        panel: Observed panel (at least 5 controls, 10 periods)

    Returns:
        DgpConfig without trend and with zero effect

    Raises:
        CalibrationError: panel too small or rank-deficient
    """
    if panel.n_controls < MIN_CONTROLS:
        raise CalibrationError(
            f"Calibration needs at least {MIN_CONTROLS} controls, got {panel.n_controls}"
        )
    if panel.n_periods < MIN_PERIODS:
        raise CalibrationError(
            f"Calibration needs at least {MIN_PERIODS} periods, got {panel.n_periods}"
        )

    controls, treated = detrend(panel)
    factors = factor_decomposition(controls)
    sigma_f = np.atleast_2d(np.cov(factors.scores, rowvar=False))
    sigma_f = 0.5 * (sigma_f + sigma_f.T)

    ar = [
        fit_ar1(factors.residuals[:, i], label=label)
        for i, label in enumerate(panel.control_labels)
    ]

    x_pre, y_pre = controls[:panel.t0], treated[:panel.t0]
    sc = fit_weights(Method.SC, x_pre, y_pre)
    cl = fit_weights(Method.CL, x_pre, y_pre, q=1.0)
    rho_u, sigma_v = fit_ar1(residuals(sc, x_pre, y_pre), label=panel.treated_label)

    dgp = DgpConfig(
        n_units=panel.n_controls,
        t0=panel.t0,
        t1=panel.t1,
        loadings=factors.loadings.tolist(),
        sigma_f=sigma_f.tolist(),
        ar_rho=[rho for rho, _ in ar],
        ar_sigma=[sigma for _, sigma in ar],
        rho_u=rho_u,
        sigma_v=sigma_v,
        trend=TrendSpec(),
        sc_fit=TreatedEquation(mu=0.0, w=sc.w.tolist()),
        cl_fit=TreatedEquation(mu=cl.intercept or 0.0, w=cl.w.tolist()),
        trend_line=trend_line(panel.controls.mean(axis=1)),
    )

    logger.info("Calibration complete", **dgp.summary())
    return dgp
