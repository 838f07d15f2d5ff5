"""
Unit tests for DGP calibration
"""

import numpy as np
import pytest

from montecarlo.calibration import (
    AR_CLAMP,
    calibrate,
    detrend,
    factor_decomposition,
    fit_ar1,
    trend_line,
)
from montecarlo.dgp import DgpConfig, MuWKind, MuWSpec, TreatedEquation
from montecarlo.errors import CalibrationError
from montecarlo.generator import generate_panel
from panel.models import Panel


@pytest.fixture
def generated_panel():
    """Panel drawn from an eight-unit factor model"""
    rng = np.random.default_rng(21)
    n = 8
    dgp = DgpConfig(
        n_units=n,
        t0=30,
        t1=10,
        loadings=rng.normal(size=(n, 4)).tolist(),
        sigma_f=np.diag([2.0, 1.5, 1.0, 0.5]).tolist(),
        ar_rho=[0.6] * n,
        ar_sigma=[0.5] * n,
        rho_u=0.4,
        sigma_v=0.3,
        sc_fit=TreatedEquation(mu=0.0, w=[0.4, 0.3, 0.3] + [0.0] * (n - 3)),
    )
    return generate_panel(dgp, MuWSpec(kind=MuWKind.SC_FIT), seed=4)


class TestDetrend:
    """Test cases for detrend"""

    def test_controls_average_out(self, generated_panel):
        """Test every de-trended row of controls sums to zero"""
        controls, treated = detrend(generated_panel)
        np.testing.assert_allclose(controls.sum(axis=1), 0.0, atol=1e-10)
        np.testing.assert_allclose(
            treated, generated_panel.treated - generated_panel.controls.mean(axis=1)
        )


class TestFactorDecomposition:
    """Test cases for factor_decomposition"""

    def test_exact_rank_four(self):
        """Test a rank-four matrix is reconstructed"""
        rng = np.random.default_rng(2)
        matrix = 3.0 + rng.normal(size=(30, 4)) @ rng.normal(size=(4, 8))
        fit = factor_decomposition(matrix)
        assert fit.scores.shape == (30, 4)
        assert fit.loadings.shape == (8, 4)
        assert np.max(np.abs(fit.reconstruct() - matrix)) < 1e-6
        assert np.max(np.abs(fit.residuals)) < 1e-6

    def test_rank_deficient(self):
        """Test fewer than four factors available"""
        rng = np.random.default_rng(2)
        matrix = rng.normal(size=(30, 2)) @ rng.normal(size=(2, 8))
        with pytest.raises(CalibrationError):
            factor_decomposition(matrix)


class TestFitAr1:
    """Test cases for fit_ar1"""

    def test_white_noise(self):
        """Test white noise has a small coefficient"""
        series = np.random.default_rng(8).normal(size=2000)
        rho, sigma = fit_ar1(series)
        assert abs(rho) < 0.1
        assert sigma == pytest.approx(1.0, rel=0.1)

    def test_recovers_coefficient(self):
        """Test a long AR(1) path"""
        rng = np.random.default_rng(8)
        series = np.zeros(5000)
        for t in range(1, series.size):
            series[t] = 0.7 * series[t - 1] + rng.normal()
        rho, sigma = fit_ar1(series)
        assert rho == pytest.approx(0.7, abs=0.05)
        assert sigma == pytest.approx(1.0, rel=0.05)

    def test_explosive_clamped(self):
        """Test coefficients beyond one are clamped"""
        rho, _ = fit_ar1(1.1 ** np.arange(30))
        assert rho == AR_CLAMP


class TestTrendLine:
    """Test cases for trend_line"""

    def test_exact_line(self):
        """Test an exact line over t = 1..T"""
        line = trend_line(2.0 + 3.0 * np.arange(1, 11))
        assert line.a == pytest.approx(2.0)
        assert line.b == pytest.approx(3.0)


class TestCalibrate:
    """Test cases for calibrate"""

    def test_generated_panel(self, generated_panel):
        """Test calibrated dimensions and constraint sets"""
        dgp = calibrate(generated_panel)
        assert dgp.n_units == 8
        assert dgp.t0 == 30 and dgp.t1 == 10
        assert dgp.loading_matrix.shape == (8, 4)
        assert np.allclose(dgp.factor_cov, dgp.factor_cov.T)
        assert all(abs(rho) < 1.0 for rho in dgp.ar_rho)
        assert -1.0 < dgp.rho_u < 1.0
        assert dgp.effect == 0.0
        assert dgp.trend.kind.value == 'none'

        sc = dgp.sc_fit.weights
        assert np.all(sc >= -1e-10) and sc.sum() == pytest.approx(1.0)
        assert dgp.sc_fit.mu == 0.0
        assert np.abs(dgp.cl_fit.weights).sum() <= 1.0 + 1e-8
        assert dgp.trend_line is not None

    def test_json_round_trip(self, generated_panel):
        """Test the calibration file reloads unchanged"""
        dgp = calibrate(generated_panel)
        assert DgpConfig.from_json(dgp.to_json()) == dgp

    def test_too_few_controls(self):
        """Test panels with fewer than five controls"""
        rng = np.random.default_rng(0)
        panel = Panel(list(range(20)), rng.normal(size=(20, 4)), 0, 15, list("abcd"))
        with pytest.raises(CalibrationError):
            calibrate(panel)

    def test_too_few_periods(self):
        """Test panels with fewer than ten periods"""
        rng = np.random.default_rng(0)
        panel = Panel(list(range(8)), rng.normal(size=(8, 7)), 0, 5, list("abcdefg"))
        with pytest.raises(CalibrationError):
            calibrate(panel)
