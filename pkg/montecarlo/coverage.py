"""
Coverage Experiments
Monte Carlo coverage and interval length of the cross-fitted procedure,
plus the size experiment of the location block t-test
"""

import math
from pathlib import Path
from typing import Any, Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

import pandas as pd

from config.settings import get_settings
from estimators.methods import Method
from inference.crossfit import crossfit_att, naive_att
from inference.distributions import t_quantile
from inference.errors import DegenerateVarianceError, FoldFitError
from inference.location import gaussian_location_tstat
from monitoring import get_logger
from montecarlo.dgp import DgpConfig, MuWSpec
from montecarlo.executor import ReplicationExecutor
from montecarlo.generator import generate_panel, replication_rng
from panel.config import ConfigurationError, EstimationConfig
from solvers.errors import SolverConvergenceError

logger = get_logger(__name__)
settings = get_settings()

COVERAGE_COLUMNS = ['dgp', 'method', 'K', 'coverage', 'avg_length', 'reps', 'degenerate', 'seed']
ESTIMATE_COLUMNS = ['rep', 'method', 'K', 'att', 'naive_att', 'ci_lo', 'ci_hi', 'degenerate']


class CoverageRow:
    """Aggregated result of one (method, K) cell"""

    def __init__(
        self,
        dgp: str,
        method: str,
        k: int,
        coverage: float,
        avg_length: float,
        reps: int,
        degenerate: int,
        seed: int,
        failures: int = 0
    ):
        self.dgp = dgp
        self.method = method
        self.k = k
        self.coverage = coverage
        self.avg_length = avg_length
        self.reps = reps
        self.degenerate = degenerate
        self.seed = seed
        self.failures = failures

    @property
    def evaluated(self) -> int:
        """Replications entering the coverage denominator"""
        return self.reps - self.degenerate - self.failures

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary (CSV columns)"""
        return {
            'dgp': self.dgp,
            'method': self.method,
            'K': self.k,
            'coverage': self.coverage,
            'avg_length': self.avg_length,
            'reps': self.reps,
            'degenerate': self.degenerate,
            'seed': self.seed,
        }


class CoverageTable:
    """Coverage rows in (method, K) order plus optional per-replication estimates"""

    def __init__(self, rows: List[CoverageRow], estimates: Optional[List[Dict[str, Any]]] = None):
        self.rows = rows
        self.estimates = estimates or []

    def row(self, method: str, k: int) -> CoverageRow:
        for row in self.rows:
            if row.method == method and row.k == k:
                return row
        raise KeyError(f"No row for method={method}, K={k}")

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([row.to_dict() for row in self.rows], columns=COVERAGE_COLUMNS)

    def estimates_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.estimates, columns=ESTIMATE_COLUMNS)

    def to_csv(self, path: Optional[Union[str, Path]] = None) -> str:
        """Coverage CSV; written to path when given"""
        return _write_csv(self.to_frame(), path)

    def estimates_to_csv(self, path: Optional[Union[str, Path]] = None) -> str:
        """Per-replication estimates CSV; written to path when given"""
        return _write_csv(self.estimates_frame(), path)

    def __len__(self) -> int:
        return len(self.rows)


def _write_csv(frame: pd.DataFrame, path: Optional[Union[str, Path]]) -> str:
    text = frame.to_csv(index=False, lineterminator="\n", float_format="%.6g", na_rep="NaN")
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


def _naive(panel, config: EstimationConfig) -> float:
    try:
        return naive_att(panel, config)[0]
    except SolverConvergenceError:
        return math.nan


class _Outcome(NamedTuple):
    covered: bool
    length: float
    att: float
    ci: Optional[Tuple[float, float]]
    naive: Optional[float]
    status: str


def _build_configs(
    methods: Iterable,
    k_values: Iterable[int],
    alpha: float,
    tau0: float,
    q: Optional[float]
) -> Dict[Tuple[str, int], EstimationConfig]:
    configs = {}
    for method in methods:
        method = Method.parse(method)
        radius = q if method in (Method.CL, Method.MCL) else None
        for k in k_values:
            configs[(method.value, int(k))] = EstimationConfig(
                method=method, k_folds=int(k), alpha=alpha, q=radius, tau0=tau0
            )
    return configs


def run_coverage(
    dgp: DgpConfig,
    spec: MuWSpec,
    methods: Sequence,
    k_values: Sequence[int],
    reps: int,
    alpha: Optional[float] = None,
    master_seed: int = 0,
    workers: int = 1,
    q: Optional[float] = None,
    dgp_id: str = "custom",
    collect_estimates: bool = False
) -> CoverageTable:
    """
    Coverage and average length of cross-fitted intervals over replications

    Replication j draws its panel from the stream keyed by (master_seed, j);
    every (method, K) cell is evaluated on the same panels. Replications with
    degenerate fold variance are tallied and left out of the coverage
    denominator, as are failed fold fits.

    Args:
        dgp: Data-generating configuration; dgp.effect is the true ATT
        spec: Treated-equation variant
        methods: Estimators to evaluate
        k_values: Fold counts to evaluate
        reps: Number of replications (>= 1)
        alpha: Significance level (settings default when None)
        master_seed: Master seed of the replication streams
        workers: Worker threads
        q: l1 radius for CL/MCL (method defaults when None)
        dgp_id: Label written to the table
        collect_estimates: Keep per-replication estimates

    Returns:
        CoverageTable with one row per (method, K), methods outermost

    Raises:
        ConfigurationError: a (method, K) cell cannot be cross-fitted on T0 and T1
    """
    if reps < 1:
        raise ValueError(f"reps must be at least 1, got {reps}")
    methods = list(methods)
    if not methods:
        raise ValueError("At least one method is required")
    k_values = list(k_values)
    if not k_values:
        raise ValueError("At least one K is required")
    alpha = settings.DEFAULT_ALPHA if alpha is None else alpha

    configs = _build_configs(methods, k_values, alpha, dgp.effect, q)
    for config in configs.values():
        config.validate_dims(dgp.t0, dgp.t1)
    tau = dgp.effect

    def replicate(rep: int) -> Dict[Tuple[str, int], _Outcome]:
        panel = generate_panel(dgp, spec, replication_rng(master_seed, rep))
        outcomes = {}
        for key, config in configs.items():
            naive = _naive(panel, config) if collect_estimates else None
            try:
                result = crossfit_att(panel, config)
            except DegenerateVarianceError as e:
                outcomes[key] = _Outcome(False, math.nan, e.tau_hat, None, naive, 'degenerate')
                continue
            except (FoldFitError, ConfigurationError) as e:
                logger.warning("Replication failed", rep=rep, method=key[0], K=key[1], error=str(e))
                outcomes[key] = _Outcome(False, math.nan, math.nan, None, naive, 'failed')
                continue
            outcomes[key] = _Outcome(
                result.covers(tau), result.ci_length, result.tau_hat, result.ci, naive, 'ok'
            )
        return outcomes

    logger.info(
        "Coverage run started",
        dgp=dgp_id,
        cells=len(configs),
        reps=reps,
        workers=workers,
        seed=master_seed
    )
    results = ReplicationExecutor(workers).run(replicate, list(range(reps)))

    rows = []
    for (method, k) in configs:
        cell = [outcomes[(method, k)] for outcomes in results]
        ok = [o for o in cell if o.status == 'ok']
        degenerate = sum(o.status == 'degenerate' for o in cell)
        failures = sum(o.status == 'failed' for o in cell)
        coverage = sum(o.covered for o in ok) / len(ok) if ok else math.nan
        avg_length = math.fsum(o.length for o in ok) / len(ok) if ok else math.nan
        rows.append(CoverageRow(
            dgp=dgp_id,
            method=method,
            k=k,
            coverage=coverage,
            avg_length=avg_length,
            reps=reps,
            degenerate=degenerate,
            seed=master_seed,
            failures=failures,
        ))
        if degenerate or failures:
            logger.warning(
                "Replications excluded",
                method=method,
                K=k,
                degenerate=degenerate,
                failed=failures
            )

    estimates = []
    if collect_estimates:
        for rep, outcomes in enumerate(results):
            for (method, k), o in outcomes.items():
                estimates.append({
                    'rep': rep,
                    'method': method,
                    'K': k,
                    'att': o.att,
                    'naive_att': o.naive,
                    'ci_lo': o.ci[0] if o.ci else math.nan,
                    'ci_hi': o.ci[1] if o.ci else math.nan,
                    'degenerate': o.status == 'degenerate',
                })

    logger.info("Coverage run finished", dgp=dgp_id, rows=len(rows))
    return CoverageTable(rows, estimates)


class LocationSize(NamedTuple):
    """Rejection rate of the location block t-test under the null"""
    rate: float
    reps: int
    degenerate: int


def run_location_size(
    t: int,
    k: int,
    reps: int,
    alpha: Optional[float] = None,
    seed: int = 0
) -> LocationSize:
    """
    Size of the two-sided block t-test for iid N(0, 1) series

    Args:
        t: Series length (divisible by k)
        k: Number of blocks
        reps: Replications
        alpha: Nominal level (settings default when None)
        seed: Master seed

    Returns:
        LocationSize(rate, reps, degenerate)
    """
    if reps < 1:
        raise ValueError(f"reps must be at least 1, got {reps}")
    alpha = settings.DEFAULT_ALPHA if alpha is None else alpha
    critical = t_quantile(1.0 - alpha / 2.0, k - 1)

    rejections = 0
    degenerate = 0
    for rep in range(reps):
        y = replication_rng(seed, rep).standard_normal(t)
        try:
            stat, _ = gaussian_location_tstat(y, k)
        except DegenerateVarianceError:
            degenerate += 1
            continue
        rejections += abs(stat) > critical

    evaluated = reps - degenerate
    rate = rejections / evaluated if evaluated else math.nan
    logger.info("Location size", t=t, k=k, reps=reps, rate=rate)
    return LocationSize(rate=rate, reps=reps, degenerate=degenerate)
