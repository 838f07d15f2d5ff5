"""Synthetic-control-type weight estimators"""
from .methods import Method, constraint_for, default_intercept, default_radius
from .weights import DimensionMismatchError, fit_weights, residuals

__all__ = [
    'Method',
    'constraint_for',
    'default_intercept',
    'default_radius',
    'DimensionMismatchError',
    'fit_weights',
    'residuals',
]
