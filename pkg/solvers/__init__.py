"""Projections and constrained least squares"""
from .errors import InfeasibleConstraintError, NonFiniteInputError, SolverConvergenceError
from .options import SolverOptions
from .projections import project_simplex, project_l1_ball, project_l1_affine
from .models import ConstraintKind, ConstraintSet, WeightFit
from .least_squares import constrained_least_squares, lipschitz_constant, sum_of_squares

__all__ = [
    'InfeasibleConstraintError',
    'NonFiniteInputError',
    'SolverConvergenceError',
    'SolverOptions',
    'project_simplex',
    'project_l1_ball',
    'project_l1_affine',
    'ConstraintKind',
    'ConstraintSet',
    'WeightFit',
    'constrained_least_squares',
    'lipschitz_constant',
    'sum_of_squares',
]
