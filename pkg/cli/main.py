"""
CLI Main
Command-line interface: estimate, calibrate, simulate, curve
"""

import sys
from pathlib import Path
from typing import List, Optional

import click
import pandas as pd
from pydantic import ValidationError

from cli.formatter import OutputFormatter
from config.settings import get_settings
from estimators.methods import Method
from inference.crossfit import crossfit_att
from inference.distributions import expected_ci_length
from inference.errors import DegenerateVarianceError, FoldFitError
from monitoring import configure_logging, get_logger
from montecarlo.calibration import calibrate as calibrate_panel
from montecarlo.catalog import list_scenarios, scenario
from montecarlo.coverage import run_coverage
from montecarlo.dgp import DgpConfig
from montecarlo.errors import CalibrationError
from panel.config import ConfigurationError, EstimationConfig
from panel.io import load_panel
from panel.models import PanelValidationError
from solvers.errors import InfeasibleConstraintError, SolverConvergenceError

logger = get_logger(__name__)
settings = get_settings()

EXIT_VALIDATION = 2
EXIT_DEGENERATE = 3
EXIT_NUMERIC = 4

VALIDATION_ERRORS = (
    PanelValidationError,
    ConfigurationError,
    InfeasibleConstraintError,
    ValidationError,
)
NUMERIC_ERRORS = (FoldFitError, SolverConvergenceError, CalibrationError)

METHOD_CHOICE = click.Choice([m.value for m in Method], case_sensitive=False)
UNIT_INTERVAL = click.FloatRange(0.0, 1.0, min_open=True, max_open=True)
POSITIVE = click.FloatRange(min=0.0, min_open=True)


def _fail(message: str, code: int) -> None:
    click.echo(f"Error: {message}", err=True)
    sys.exit(code)


def _split_methods(ctx, param, value: str) -> List[Method]:
    try:
        return [Method.parse(item) for item in value.split(",") if item.strip()]
    except ValueError as e:
        raise click.BadParameter(str(e))


def _split_ints(ctx, param, value: str) -> List[int]:
    try:
        values = [int(item) for item in value.split(",") if item.strip()]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got {value!r}")
    if not values or min(values) < 2:
        raise click.BadParameter("every K must be at least 2")
    return values


@click.group()
@click.option(
    '--log-level',
    type=click.Choice(['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'], case_sensitive=False),
    default=None,
    help='Log level (stderr)'
)
@click.option(
    '--log-format',
    type=click.Choice(['text', 'json']),
    default=None,
    help='Log format'
)
@click.pass_context
def cli(ctx, log_level, log_format):
    """Cross-fitted synthetic control inference"""
    ctx.ensure_object(dict)
    if log_level or log_format:
        configure_logging(log_level=log_level, log_format=log_format)
    ctx.obj['formatter'] = OutputFormatter()


@cli.command()
@click.option('--panel', 'panel_path', required=True,
              type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help='Wide-format panel CSV')
@click.option('--treated', required=True, help='Header label of the treated unit')
@click.option('--t0', required=True, type=click.IntRange(min=2),
              help='Number of pre-treatment periods')
@click.option('--method', default=Method.SC.value, type=METHOD_CHOICE, show_default=True)
@click.option('--k', 'k_folds', default=settings.DEFAULT_K, type=click.IntRange(min=2),
              show_default=True, help='Number of cross-fitting folds')
@click.option('--alpha', default=settings.DEFAULT_ALPHA, type=UNIT_INTERVAL, show_default=True)
@click.option('--q', default=None, type=POSITIVE, help='l1 radius for cl/mcl')
@click.option('--tau0', default=0.0, type=float, show_default=True, help='Null value of the ATT')
@click.option('--json', 'output', flag_value='json', help='Print the JSON document')
@click.option('--table', 'output', flag_value='table', default=True, help='Print a table')
@click.pass_context
def estimate(ctx, panel_path, treated, t0, method, k_folds, alpha, q, tau0, output):
    """Estimate the ATT with a cross-fitted confidence interval"""
    formatter = ctx.obj['formatter']
    try:
        panel = load_panel(panel_path, treated=treated, t0=t0)
        config = EstimationConfig(method=method, k_folds=k_folds, alpha=alpha, q=q, tau0=tau0)
        result = crossfit_att(panel, config)
    except VALIDATION_ERRORS as e:
        _fail(str(e), EXIT_VALIDATION)
    except DegenerateVarianceError as e:
        if e.partial is not None:
            if output == 'json':
                click.echo(e.partial.to_json())
            else:
                click.echo(formatter.format_crossfit(e.partial))
        _fail(str(e), EXIT_DEGENERATE)
    except NUMERIC_ERRORS as e:
        _fail(str(e), EXIT_NUMERIC)

    if output == 'json':
        click.echo(result.to_json())
    else:
        click.echo(formatter.format_crossfit(result))


@cli.command()
@click.option('--panel', 'panel_path', required=True,
              type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option('--treated', required=True)
@click.option('--t0', required=True, type=click.IntRange(min=2))
@click.option('--out', 'out_path', required=True,
              type=click.Path(dir_okay=False, writable=True, path_type=Path),
              help='DgpConfig JSON to write')
def calibrate(panel_path, treated, t0, out_path):
    """Calibrate the factor-model DGP to a panel"""
    try:
        panel = load_panel(panel_path, treated=treated, t0=t0)
        dgp = calibrate_panel(panel)
    except VALIDATION_ERRORS as e:
        _fail(str(e), EXIT_VALIDATION)
    except NUMERIC_ERRORS as e:
        _fail(str(e), EXIT_NUMERIC)

    dgp.save(out_path)
    summary = dgp.summary()
    click.echo(
        f"median rho: {summary['median_rho']:.2f}  rho_u: {summary['rho_u']:.2f}  "
        f"sigma_v: {summary['sigma_v']:.3f}  -> {out_path}",
        err=True,
    )


@cli.command()
@click.option('--dgp', 'dgp_id', required=True, type=click.Choice(list_scenarios()),
              help='Scenario id')
@click.option('--calib', 'calib_path', default=None,
              type=click.Path(dir_okay=False, path_type=Path),
              help='DgpConfig JSON (defaults to the bundled calibration)')
@click.option('--methods', default='cl,sc,did', callback=_split_methods, show_default=True)
@click.option('--k', 'k_values', default='2,3', callback=_split_ints, show_default=True)
@click.option('--reps', default=settings.SIM_REPS, type=click.IntRange(min=1), show_default=True)
@click.option('--alpha', default=settings.DEFAULT_ALPHA, type=UNIT_INTERVAL, show_default=True)
@click.option('--seed', default=settings.SIM_SEED, type=click.IntRange(min=0), show_default=True)
@click.option('--out', 'out_path', default=None,
              type=click.Path(dir_okay=False, writable=True, path_type=Path),
              help='Coverage CSV (stdout when omitted)')
@click.option('--t0', default=None, type=click.IntRange(min=2), help='Pre-period override')
@click.option('--workers', default=settings.SIM_WORKERS, type=click.IntRange(min=1),
              show_default=True)
@click.option('--q', default=None, type=POSITIVE, help='l1 radius for cl/mcl')
@click.option('--dump-estimates', 'dump_path', default=None,
              type=click.Path(dir_okay=False, writable=True, path_type=Path),
              help='Per-replication estimates CSV')
def simulate(dgp_id, calib_path, methods, k_values, reps, alpha, seed, out_path, t0, workers,
             q, dump_path):
    """Coverage and interval length over Monte Carlo replications"""
    calib_path = calib_path or settings.basque_calibration_path
    try:
        calibration = DgpConfig.load(calib_path)
    except (OSError, ValidationError) as e:
        _fail(f"Cannot read calibration {calib_path}: {e}", EXIT_VALIDATION)

    try:
        dgp, spec = scenario(dgp_id, calibration, t0=t0)
        table = run_coverage(
            dgp,
            spec,
            methods=methods,
            k_values=k_values,
            reps=reps,
            alpha=alpha,
            master_seed=seed,
            workers=workers,
            q=q,
            dgp_id=dgp_id,
            collect_estimates=dump_path is not None,
        )
    except VALIDATION_ERRORS as e:
        _fail(str(e), EXIT_VALIDATION)
    except NUMERIC_ERRORS as e:
        _fail(str(e), EXIT_NUMERIC)

    text = table.to_csv(out_path)
    if out_path is None:
        click.echo(text, nl=False)
    if dump_path is not None:
        table.estimates_to_csv(dump_path)


@cli.command()
@click.option('--t0', required=True, type=click.IntRange(min=1))
@click.option('--t1', required=True, type=click.IntRange(min=1))
@click.option('--alpha', default=settings.DEFAULT_ALPHA, type=UNIT_INTERVAL, show_default=True)
@click.option('--sigma', default=1.0, type=POSITIVE, show_default=True)
@click.option('--kmax', required=True, type=click.IntRange(min=2))
@click.option('--out', 'out_path', default=None,
              type=click.Path(dir_okay=False, writable=True, path_type=Path),
              help='CSV to write (stdout when omitted)')
def curve(t0, t1, alpha, sigma, kmax, out_path):
    """Expected confidence-interval length for K = 2..kmax"""
    c0 = t0 / t1
    ks = list(range(2, kmax + 1))
    frame = pd.DataFrame({
        'K': ks,
        'expected_ci_length': [expected_ci_length(k, alpha, c0, sigma) for k in ks],
    })
    text = frame.to_csv(index=False, lineterminator="\n", float_format="%.10g")
    if out_path is None:
        click.echo(text, nl=False)
    else:
        out_path.write_text(text, encoding="utf-8")


if __name__ == '__main__':
    cli()
