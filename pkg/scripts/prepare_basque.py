#!/usr/bin/env python3
"""
Basque Fixture Preparation
Converts the long-format `basque` table of the R Synth package into the wide
panel CSV read by `load_panel`

    Rscript -e 'library(Synth); data(basque); write.csv(basque, "basque_long.csv", row.names=FALSE)'
    python scripts/prepare_basque.py basque_long.csv data/basque.csv
"""

import sys
from pathlib import Path

import click
import pandas as pd

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from panel.io import dump_panel  # noqa: E402
from panel.models import Panel  # noqa: E402

SPAIN_REGION = 1
BASQUE_REGION = 17
FIRST_TREATED_YEAR = 1970


@click.command()
@click.argument('source', type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.argument('target', type=click.Path(dir_okay=False, writable=True, path_type=Path))
@click.option('--outcome', default='gdpcap', show_default=True)
def main(source: Path, target: Path, outcome: str):
    """Write the wide Basque panel: time, Basque, then the 16 other regions"""
    long = pd.read_csv(source)
    long = long[long['regionno'] != SPAIN_REGION]

    wide = long.pivot(index='year', columns='regionno', values=outcome).sort_index()
    names = long.drop_duplicates('regionno').set_index('regionno')['regionname']

    controls = [r for r in wide.columns if r != BASQUE_REGION]
    wide = wide[[BASQUE_REGION] + controls]
    labels = ['Basque'] + [str(names[r]).split(' (')[0] for r in controls]

    years = [int(y) for y in wide.index]
    panel = Panel(
        times=years,
        outcomes=wide.to_numpy(dtype=float),
        treated_col=0,
        t0=sum(y < FIRST_TREATED_YEAR for y in years),
        unit_labels=labels,
    )
    dump_panel(panel, target)
    click.echo(f"Wrote {panel!r} to {target}", err=True)


if __name__ == '__main__':
    main()
