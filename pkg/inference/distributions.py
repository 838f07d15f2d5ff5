"""
Student-t Distribution
CDF, quantiles and the expected-length curve of the cross-fitted interval
"""

import math

import numpy as np
from scipy.optimize import brentq
from scipy.special import betainc, gammaln


def _check_df(df) -> int:
    if int(df) != df or df < 1:
        raise ValueError(f"Degrees of freedom must be a positive integer, got {df}")
    return int(df)


def t_cdf(x: float, df: int) -> float:
    """
    CDF of Student's t with df degrees of freedom

    Uses the regularized incomplete beta function:
    P(T <= x) = 1 - I_{df/(df+x^2)}(df/2, 1/2) / 2 for x >= 0.

    Args:
        x: Evaluation point
        df: Degrees of freedom (>= 1)

    Returns:
        Probability in [0, 1]
    """
    df = _check_df(df)
    x = float(x)
    tail = 0.5 * float(betainc(0.5 * df, 0.5, df / (df + x * x)))
    return 1.0 - tail if x >= 0 else tail


def t_quantile(p: float, df: int) -> float:
    """
    Quantile of Student's t by bracketed root finding on t_cdf

    Args:
        p: Probability in (0, 1)
        df: Degrees of freedom (>= 1)

    Returns:
        x with t_cdf(x, df) = p
    """
    df = _check_df(df)
    p = float(p)
    if not 0.0 < p < 1.0:
        raise ValueError(f"Probability must lie in (0, 1), got {p}")
    if p == 0.5:
        return 0.0
    if p < 0.5:
        return -t_quantile(1.0 - p, df)

    hi = 1.0
    while t_cdf(hi, df) < p:
        hi *= 2.0
    return float(brentq(
        lambda x: t_cdf(x, df) - p,
        0.0,
        hi,
        xtol=1e-13,
        rtol=4 * np.finfo(float).eps,
        maxiter=500,
    ))


def g_factor(c0: float, k: int) -> float:
    """
    Fold-noise weight g_{c0,K} of the limiting fold distribution

    K if c0 < 1, K / c0 if 1 <= c0 <= K, and 1 if c0 > K (c0 may be inf).
    """
    if k < 2:
        raise ValueError(f"K must be at least 2, got {k}")
    if c0 < 0:
        raise ValueError(f"c0 must be non-negative, got {c0}")
    if c0 < 1:
        return float(k)
    if c0 <= k:
        return k / c0
    return 1.0


def limiting_variance(c0: float, k: int, sigma: float = 1.0) -> float:
    """Asymptotic variance (min{c0,1} + g_{c0,K}/K) sigma^2 of the pooled estimator"""
    return (min(c0, 1.0) + g_factor(c0, k) / k) * sigma ** 2


def expected_ci_length(k: int, alpha: float, c0: float, sigma: float) -> float:
    """
    Expected length of the limiting (1 - alpha) interval as a function of K

    C * t_{K-1}(1 - alpha/2) * sqrt(1/(K-1)) * Gamma(K/2) / Gamma((K-1)/2)
    with C = 2 sqrt(2) sqrt(1 + c0) sigma.

    Args:
        k: Number of folds (>= 2)
        alpha: Significance level in (0, 1)
        c0: Limit of T0/T1 (>= 0)
        sigma: Long-run standard deviation (> 0)

    Returns:
        Expected interval length
    """
    if k < 2:
        raise ValueError(f"K must be at least 2, got {k}")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    if c0 < 0:
        raise ValueError(f"c0 must be non-negative, got {c0}")
    if not sigma > 0:
        raise ValueError(f"sigma must be positive, got {sigma}")

    scale = 2.0 * math.sqrt(2.0) * math.sqrt(1.0 + c0) * sigma
    gamma_ratio = math.exp(gammaln(k / 2.0) - gammaln((k - 1) / 2.0))
    return scale * t_quantile(1.0 - alpha / 2.0, k - 1) * math.sqrt(1.0 / (k - 1)) * gamma_ratio
