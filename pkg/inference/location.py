"""
Location Block t-Test
Self-normalized test of a zero mean from K consecutive block means
"""

import math
from typing import Tuple

import numpy as np

from config.settings import get_settings
from inference.errors import DegenerateVarianceError

settings = get_settings()


def gaussian_location_tstat(y, k: int) -> Tuple[float, int]:
    """
    Block t-statistic for H0: E[y_t] = 0

    The series is cut into K consecutive blocks of length G = T / K; with block
    means b_k and their average b, the statistic is sqrt(K) b / sd(b_k) and is
    compared with Student-t on K - 1 degrees of freedom.

    Args:
        y: Length-T series
        k: Number of blocks (>= 2, must divide T)

    Returns:
        (statistic, degrees of freedom)

    Raises:
        ValueError: k < 2 or T not divisible by k
        DegenerateVarianceError: identical block means
    """
    y = np.asarray(y, dtype=float).ravel()
    if k < 2:
        raise ValueError(f"Need at least 2 blocks, got k={k}")
    if y.size == 0 or y.size % k:
        raise ValueError(f"Series length {y.size} is not divisible by k={k}")

    means = y.reshape(k, -1).mean(axis=1)
    center = float(means.mean())
    spread = float(np.sqrt(np.sum((means - center) ** 2) / (k - 1)))
    if spread <= settings.DEGENERATE_RTOL * (1.0 + float(np.max(np.abs(y)))):
        raise DegenerateVarianceError("Block means have zero dispersion", tau_hat=center)

    return math.sqrt(k) * center / spread, k - 1
