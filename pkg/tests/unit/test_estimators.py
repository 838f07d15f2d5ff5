"""
Unit tests for the weight estimators
"""

import numpy as np
import pytest

from estimators.methods import Method, constraint_for, default_intercept, default_radius
from estimators.weights import DimensionMismatchError, fit_weights, residuals
from solvers.errors import InfeasibleConstraintError
from solvers.models import ConstraintKind, ConstraintSet, WeightFit


@pytest.fixture
def rng():
    """Seeded generator"""
    return np.random.default_rng(11)


class TestMethod:
    """Test cases for Method and its defaults"""

    def test_parse_case_insensitive(self):
        """Test names parse in any case"""
        assert Method.parse("MCL") == Method.MCL
        assert Method.parse(" did ") == Method.DID

    def test_parse_unknown(self):
        """Test unknown names are rejected"""
        with pytest.raises(ValueError):
            Method.parse("lasso")

    def test_defaults(self):
        """Test default radii and intercepts"""
        assert default_radius(Method.CL) == 1.0
        assert default_radius(Method.MCL) == 1.5
        assert default_radius(Method.SC) is None
        assert not default_intercept(Method.SC)
        assert all(default_intercept(m) for m in (Method.CL, Method.MCL, Method.DID))

    def test_constraint_for(self):
        """Test feasible sets per method"""
        assert constraint_for(Method.SC).kind == ConstraintKind.SIMPLEX
        assert constraint_for(Method.CL, 2.0) == ConstraintSet.l1_ball(2.0)
        assert constraint_for(Method.MCL) == ConstraintSet.l1_ball_affine(1.5)
        assert constraint_for(Method.DID).kind == ConstraintKind.FIXED_EQUAL


class TestFitWeights:
    """Test cases for fit_weights"""

    def test_did_equal_weights(self, rng):
        """Test DID weights are 1/N regardless of data"""
        X = rng.normal(size=(15, 16))
        fit = fit_weights(Method.DID, X, rng.normal(size=15))
        np.testing.assert_allclose(fit.w, np.full(16, 1 / 16))

    def test_did_determinism(self, rng):
        """Test DID weights do not depend on the data"""
        a = fit_weights("did", rng.normal(size=(6, 3)), rng.normal(size=6))
        b = fit_weights("did", rng.normal(size=(9, 3)), rng.normal(size=9))
        np.testing.assert_array_equal(a.w, b.w)

    def test_cl_constant_target(self, rng):
        """Test a constant target is absorbed by the intercept"""
        X = rng.normal(size=(10, 4))
        fit = fit_weights(Method.CL, X, np.full(10, 2.5), q=1.0)
        assert fit.objective == pytest.approx(0.0, abs=1e-12)
        np.testing.assert_allclose(fit.w, 0.0, atol=1e-12)
        assert fit.intercept == pytest.approx(2.5)

    def test_sc_has_no_intercept(self, rng):
        """Test SC is fitted on raw data"""
        fit = fit_weights(Method.SC, rng.normal(size=(4, 2)), rng.normal(size=4))
        assert fit.intercept is None

    def test_intercept_override(self, rng):
        """Test SC with an intercept when requested"""
        fit = fit_weights(Method.SC, rng.normal(size=(6, 3)), rng.normal(size=6), intercept=True)
        assert fit.intercept is not None

    @pytest.mark.parametrize("method", [Method.CL, Method.MCL, Method.DID])
    def test_training_residuals_sum_to_zero(self, rng, method):
        """Test the intercept absorbs the training mean"""
        X = rng.normal(size=(12, 5))
        y = rng.normal(size=12)
        fit = fit_weights(method, X, y)
        assert residuals(fit, X, y).sum() == pytest.approx(0.0, abs=1e-9)

    @pytest.mark.parametrize("method", [Method.CL, Method.MCL, Method.DID])
    def test_translation(self, rng, method):
        """Test shifting y moves only the intercept"""
        X = rng.normal(size=(12, 5))
        y = rng.normal(size=12)
        a = fit_weights(method, X, y)
        b = fit_weights(method, X, y + 3.0)
        np.testing.assert_allclose(a.w, b.w, atol=1e-8)
        assert b.intercept - a.intercept == pytest.approx(3.0, abs=1e-8)

    def test_objective_is_raw_sum_of_squares(self, rng):
        """Test the reported objective uses the recovered intercept"""
        X = rng.normal(size=(9, 3))
        y = rng.normal(size=9)
        fit = fit_weights(Method.MCL, X, y)
        assert fit.objective == pytest.approx(float(np.sum(residuals(fit, X, y) ** 2)))

    def test_nested_objectives(self, rng):
        """Test CL <= MCL <= SC on the same data"""
        for _ in range(5):
            X = rng.normal(size=(10, 4))
            y = X @ rng.dirichlet(np.ones(4)) + rng.normal(scale=0.5, size=10)
            cl = fit_weights(Method.CL, X, y, q=1.5)
            mcl = fit_weights(Method.MCL, X, y, q=1.5)
            sc = fit_weights(Method.SC, X, y)
            assert cl.objective <= mcl.objective + 1e-6
            assert mcl.objective <= sc.objective + 1e-6

    def test_mcl_radius_below_one(self, rng):
        """Test MCL with an empty feasible set"""
        with pytest.raises(InfeasibleConstraintError):
            fit_weights(Method.MCL, rng.normal(size=(5, 2)), rng.normal(size=5), q=0.5)

    def test_intercept_needs_two_rows(self):
        """Test a single training row cannot carry an intercept"""
        with pytest.raises(ValueError, match="2 training rows"):
            fit_weights(Method.CL, [[1.0, 2.0]], [3.0])


class TestResiduals:
    """Test cases for residuals"""

    def test_exact_fit(self, rng):
        """Test zero residuals for an exact representation"""
        X = rng.normal(size=(5, 2))
        fit = WeightFit(np.array([1.0, 0.0]), ConstraintSet.simplex(), 0.0, 0, True)
        np.testing.assert_array_equal(residuals(fit, X, X[:, 0]), np.zeros(5))

    def test_hand_instance(self):
        """Test the residual formula on a hand instance"""
        fit = WeightFit(np.array([0.5, 0.5]), ConstraintSet.simplex(), 0.0, 0, True, intercept=1.0)
        X = np.array([[2.0, 2.0], [4.0, 0.0], [0.0, 0.0]])
        np.testing.assert_allclose(residuals(fit, X, [3.0, 3.0, 3.0]), [0.0, 0.0, 2.0])

    def test_did_single_control(self):
        """Test DID with one control"""
        fit = fit_weights(Method.DID, [[1.0], [1.0]], [2.0, 4.0])
        assert fit.intercept == pytest.approx(2.0)
        np.testing.assert_allclose(residuals(fit, [[1.0], [1.0]], [2.0, 4.0]), [-1.0, 1.0])

    def test_force_zero_intercept(self):
        """Test residuals without the intercept"""
        fit = WeightFit(np.array([1.0]), ConstraintSet.simplex(), 0.0, 0, True, intercept=2.0)
        np.testing.assert_allclose(residuals(fit, [[1.0]], [5.0], include_intercept=False), [4.0])

    def test_column_mismatch(self):
        """Test mismatched columns are rejected"""
        fit = WeightFit(np.array([1.0, 0.0]), ConstraintSet.simplex(), 0.0, 0, True)
        with pytest.raises(DimensionMismatchError):
            residuals(fit, np.ones((3, 3)), np.ones(3))
