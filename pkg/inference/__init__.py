"""
Inference
Cross-fitting blocks, pooled ATT, self-normalized t-statistics and Student-t functions
"""

from inference.blocks import BlockScheme, build_blocks
from inference.crossfit import FoldInference, combine_folds, crossfit_att, naive_att
from inference.distributions import (
    expected_ci_length,
    g_factor,
    limiting_variance,
    t_cdf,
    t_quantile,
)
from inference.errors import DegenerateVarianceError, FoldFitError
from inference.location import gaussian_location_tstat
from inference.results import CrossFitResult, CrossFitSummary

__all__ = [
    'BlockScheme',
    'build_blocks',
    'FoldInference',
    'combine_folds',
    'crossfit_att',
    'naive_att',
    'expected_ci_length',
    'g_factor',
    'limiting_variance',
    't_cdf',
    't_quantile',
    'DegenerateVarianceError',
    'FoldFitError',
    'gaussian_location_tstat',
    'CrossFitResult',
    'CrossFitSummary',
]
