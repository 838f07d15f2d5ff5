"""
Cross-Fitted ATT
Debiased ATT from K-fold cross-fitting over pre-period blocks, with a
self-normalized t-statistic and Student-t confidence interval
"""

import math
from typing import List, NamedTuple, Optional, Tuple

import numpy as np

from config.settings import get_settings
from estimators.weights import fit_weights, residuals
from inference.blocks import build_blocks
from inference.distributions import t_cdf, t_quantile
from inference.errors import DegenerateVarianceError, FoldFitError
from inference.results import CrossFitResult
from monitoring import get_logger
from panel.config import EstimationConfig
from panel.models import Panel, split_pre_post
from solvers.errors import NonFiniteInputError, SolverConvergenceError
from solvers.models import WeightFit

logger = get_logger(__name__)
settings = get_settings()


class FoldInference(NamedTuple):
    """Pooled estimate and self-normalized inference from fold estimates"""
    tau_hat: float
    sigma_hat: float
    t_stat: float
    df: int
    p_value: float
    ci: Tuple[float, float]


def combine_folds(
    tau_k,
    r: int,
    t1: int,
    alpha: float = 0.10,
    tau0: float = 0.0,
    scale: float = 1.0
) -> FoldInference:
    """
    Pool fold estimates into the ATT, its scale and a (1 - alpha) interval

    sigma_hat = sqrt(1 + K r / T1) * sd(tau_k), T = sqrt(K) (tau_hat - tau0) / sigma_hat,
    two-sided p-value and interval from Student-t with K - 1 degrees of freedom.

    Args:
        tau_k: Fold estimates (K >= 2)
        r: Block length
        t1: Post-treatment periods
        alpha: Significance level
        tau0: Null value of the test
        scale: Data magnitude used for the degenerate-variance threshold

    Returns:
        FoldInference

    Raises:
        DegenerateVarianceError: fold estimates have no dispersion
    """
    tau_k = np.asarray(tau_k, dtype=float)
    k = tau_k.size
    if k < 2:
        raise ValueError(f"Need at least 2 fold estimates, got {k}")

    tau_hat = float(tau_k.mean())
    spread = float(np.sqrt(np.sum((tau_k - tau_hat) ** 2) / (k - 1)))
    if spread <= settings.DEGENERATE_RTOL * scale:
        raise DegenerateVarianceError(
            f"Fold estimates have zero dispersion (tau_hat={tau_hat:.6g})",
            tau_hat=tau_hat,
        )

    sigma_hat = math.sqrt(1.0 + k * r / t1) * spread
    t_stat = math.sqrt(k) * (tau_hat - tau0) / sigma_hat
    df = k - 1
    p_value = min(1.0, 2.0 * t_cdf(-abs(t_stat), df))
    half = t_quantile(1.0 - alpha / 2.0, df) * sigma_hat / math.sqrt(k)

    return FoldInference(
        tau_hat=tau_hat,
        sigma_hat=sigma_hat,
        t_stat=t_stat,
        df=df,
        p_value=p_value,
        ci=(tau_hat - half, tau_hat + half),
    )


def crossfit_att(panel: Panel, config: Optional[EstimationConfig] = None) -> CrossFitResult:
    """
    Cross-fitted ATT estimate and confidence interval

    For each fold k, weights are fitted on the pre-period rows outside H_k and
    tau_k = mean(post residuals) - mean(H_k residuals). Folds run in order, so
    the result does not depend on scheduling.

    Args:
        panel: Validated panel
        config: Estimation configuration (settings defaults when None)

    Returns:
        CrossFitResult

    Raises:
        ConfigurationError: config does not fit the panel (e.g. K > T0)
        FoldFitError: the weight fit of a fold failed
        DegenerateVarianceError: all tau_k coincide; `partial` holds the point estimates
    """
    config = config or EstimationConfig()
    config.validate_for(panel)

    split = split_pre_post(panel)
    scheme = build_blocks(panel.t0, panel.t1, config.k_folds, config.block_position)

    tau_k: List[float] = []
    fits: List[WeightFit] = []
    for fold, (block, training) in enumerate(zip(scheme.blocks, scheme.training_sets), start=1):
        try:
            fit = fit_weights(
                config.method,
                split.x_pre[training],
                split.y_pre[training],
                q=config.radius,
                options=config.solver,
                intercept=config.uses_intercept,
            )
        except (SolverConvergenceError, NonFiniteInputError) as e:
            logger.error("Fold fit failed", fold=fold, method=config.method.value, error=str(e))
            raise FoldFitError(fold, e) from e

        post_mean = float(residuals(fit, split.x_post, split.y_post).mean())
        block_mean = float(residuals(fit, split.x_pre[block], split.y_pre[block]).mean())
        tau_k.append(post_mean - block_mean)
        fits.append(fit)

        logger.debug(
            "Fold fitted",
            fold=fold,
            iterations=fit.iterations,
            converged=fit.converged,
            tau_k=tau_k[-1]
        )

    result = CrossFitResult(
        method=config.method.value,
        k=config.k_folds,
        r=scheme.r,
        t1=panel.t1,
        alpha=config.alpha,
        tau0=config.tau0,
        tau_k=tau_k,
        fits=fits,
    )

    try:
        pooled = combine_folds(
            tau_k,
            r=scheme.r,
            t1=panel.t1,
            alpha=config.alpha,
            tau0=config.tau0,
            scale=1.0 + float(np.max(np.abs(panel.outcomes))),
        )
    except DegenerateVarianceError as e:
        logger.warning("Degenerate fold variance", method=config.method.value, att=result.tau_hat)
        raise DegenerateVarianceError(str(e), tau_hat=result.tau_hat, partial=result) from e

    result.sigma_hat = pooled.sigma_hat
    result.t_stat = pooled.t_stat
    result.p_value = pooled.p_value
    result.ci = pooled.ci

    logger.info(
        "Cross-fitted ATT",
        method=config.method.value,
        K=config.k_folds,
        r=scheme.r,
        att=result.tau_hat,
        ci=result.ci
    )
    return result


def naive_att(panel: Panel, config: Optional[EstimationConfig] = None) -> Tuple[float, WeightFit]:
    """
    Plug-in ATT without cross-fitting

    Weights are fitted on the whole pre-period and the post-period residuals
    are averaged.

    Returns:
        (att, fit)
    """
    config = config or EstimationConfig()
    split = split_pre_post(panel)
    fit = fit_weights(
        config.method,
        split.x_pre,
        split.y_pre,
        q=config.radius,
        options=config.solver,
        intercept=config.uses_intercept,
    )
    return float(residuals(fit, split.x_post, split.y_post).mean()), fit
