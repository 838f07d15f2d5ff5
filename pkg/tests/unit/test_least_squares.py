"""
Unit tests for constrained least squares
"""

import numpy as np
import pytest

from solvers.errors import NonFiniteInputError
from solvers.least_squares import constrained_least_squares, lipschitz_constant, sum_of_squares
from solvers.models import ConstraintSet
from solvers.options import SolverOptions


def grid_oracle(X, y, constraint, step):
    """Smallest objective over a 2-D grid of feasible weights"""
    if constraint.kind.value == 'simplex':
        a = np.arange(0.0, 1.0 + step / 2, step)
        grid = np.column_stack([a, 1.0 - a])
    elif constraint.kind.value == 'l1_ball_affine':
        a = np.arange(-constraint.q, constraint.q + step / 2, step)
        grid = np.column_stack([a, 1.0 - a])
        grid = grid[np.abs(grid).sum(axis=1) <= constraint.q + 1e-12]
    else:
        a = np.arange(-constraint.q, constraint.q + step / 2, step)
        w1, w2 = np.meshgrid(a, a)
        grid = np.column_stack([w1.ravel(), w2.ravel()])
        grid = grid[np.abs(grid).sum(axis=1) <= constraint.q + 1e-12]
    resid = y[None, :] - grid @ X.T
    return float(np.min(np.sum(resid ** 2, axis=1)))


class TestConstrainedLeastSquares:
    """Test cases for constrained_least_squares"""

    @pytest.fixture
    def rng(self):
        """Seeded generator"""
        return np.random.default_rng(7)

    def test_single_column_exact(self):
        """Test X = y as its single column"""
        y = np.array([1.0, -2.0, 0.5])
        fit = constrained_least_squares(y.reshape(-1, 1), y, ConstraintSet.simplex())
        np.testing.assert_allclose(fit.w, [1.0])
        assert fit.objective == pytest.approx(0.0, abs=1e-20)

    def test_first_column_recovered(self, rng):
        """Test the zero-residual vertex is found"""
        X = rng.normal(size=(8, 3))
        fit = constrained_least_squares(X, X[:, 0], ConstraintSet.simplex())
        np.testing.assert_allclose(fit.w, [1.0, 0.0, 0.0], atol=1e-5)
        assert fit.objective < 1e-9
        assert fit.converged

    def test_simplex_matches_grid(self, rng):
        """Test a random 6x2 instance against a 1-D grid"""
        X = rng.normal(size=(6, 2))
        y = rng.normal(size=6)
        c = ConstraintSet.simplex()
        fit = constrained_least_squares(X, y, c)
        assert fit.objective == pytest.approx(grid_oracle(X, y, c, 1e-5), abs=1e-6)

    @pytest.mark.parametrize("constraint", [
        ConstraintSet.simplex(),
        ConstraintSet.l1_ball(1.0),
        ConstraintSet.l1_ball_affine(1.5),
    ])
    def test_dominates_grid_oracle(self, rng, constraint):
        """Test the solver never loses to a feasible grid point"""
        step = 1e-4 if constraint.kind.value != 'l1_ball' else 5e-3
        for _ in range(10):
            m = int(rng.integers(2, 11))
            X = rng.normal(size=(m, 2))
            y = rng.normal(size=m)
            fit = constrained_least_squares(X, y, constraint)
            assert constraint.contains(fit.w, tol=1e-9)
            assert fit.objective <= grid_oracle(X, y, constraint, step) + 1e-6

    def test_objective_never_above_start(self, rng):
        """Test the returned objective is at most the starting objective"""
        X = rng.normal(size=(5, 4))
        y = rng.normal(size=5)
        c = ConstraintSet.l1_ball_affine(2.0)
        start = sum_of_squares(X, y, c.project(np.zeros(4)))
        assert constrained_least_squares(X, y, c).objective <= start

    def test_column_permutation_invariance(self, rng):
        """Test permuting columns leaves the optimum unchanged"""
        X = rng.normal(size=(10, 3))
        y = rng.normal(size=10)
        c = ConstraintSet.l1_ball(1.0)
        perm = [2, 0, 1]
        a = constrained_least_squares(X, y, c).objective
        b = constrained_least_squares(X[:, perm], y, c).objective
        assert a == pytest.approx(b, rel=1e-8, abs=1e-9)

    def test_fixed_equal_skips_optimisation(self, rng):
        """Test equal weights need no iterations"""
        X = rng.normal(size=(4, 4))
        fit = constrained_least_squares(X, rng.normal(size=4), ConstraintSet.fixed_equal())
        np.testing.assert_allclose(fit.w, [0.25] * 4)
        assert fit.iterations == 0
        assert fit.converged

    def test_non_finite_input(self):
        """Test NaN input is rejected"""
        X = np.array([[1.0, np.nan], [0.0, 1.0]])
        with pytest.raises(NonFiniteInputError):
            constrained_least_squares(X, [1.0, 2.0], ConstraintSet.simplex())

    def test_shape_mismatch(self):
        """Test row counts must agree"""
        with pytest.raises(ValueError, match="rows"):
            constrained_least_squares(np.ones((3, 2)), np.ones(2), ConstraintSet.simplex())

    def test_max_iter_reported(self, rng):
        """Test hitting max_iter returns an unconverged fit"""
        X = rng.normal(size=(20, 6))
        y = rng.normal(size=20)
        fit = constrained_least_squares(
            X, y, ConstraintSet.l1_ball(0.5), SolverOptions(max_iter=2, patience=10)
        )
        assert not fit.converged
        assert fit.iterations == 2

    @pytest.mark.parametrize("constraint", [
        ConstraintSet.l1_ball(50.0),
        ConstraintSet.l1_ball_affine(50.0),
    ])
    def test_interpolating_fit_stops_early(self, rng, constraint):
        """Test more columns than rows converge well before max_iter"""
        X = rng.normal(size=(3, 6))
        y = rng.normal(size=3)
        fit = constrained_least_squares(X, y, constraint)
        assert fit.converged
        assert fit.iterations < 5000
        assert fit.objective <= 1e-12 * float(y @ y)

    def test_exact_start_needs_no_iterations(self):
        """Test a feasible start with zero residual returns immediately"""
        X = np.ones((4, 3))
        fit = constrained_least_squares(X, np.ones(4), ConstraintSet.simplex())
        assert fit.iterations == 0
        assert fit.converged

    def test_fit_is_read_only(self, rng):
        """Test fitted weights are frozen"""
        fit = constrained_least_squares(rng.normal(size=(4, 2)), rng.normal(size=4),
                                        ConstraintSet.simplex())
        with pytest.raises(ValueError):
            fit.w[0] = 3.0


class TestLipschitzConstant:
    """Test cases for lipschitz_constant"""

    def test_matches_eigenvalue(self):
        """Test power iteration against the exact eigenvalue"""
        X = np.diag([3.0, 1.0, 0.5])
        assert lipschitz_constant(X) == pytest.approx(18.0, rel=1e-6)

    def test_zero_matrix(self):
        """Test a zero design"""
        assert lipschitz_constant(np.zeros((3, 2))) == 0.0
