"""
Panel I/O
Wide-format CSV ingest and serialization

Format: header row `time,<label>,<label>,...`, one row per period, numeric
cells with `.` as decimal separator, UTF-8.
"""

import io
import re
from pathlib import Path
from typing import BinaryIO, List, Optional, TextIO, Union

import numpy as np
import pandas as pd

from monitoring import get_logger
from panel.models import Panel, PanelValidationError, TimeLabel

logger = get_logger(__name__)

Source = Union[bytes, str, Path, BinaryIO, TextIO]

_INTEGER = re.compile(r"^[+-]?\d+$")


def _read_text(source: Source) -> str:
    if isinstance(source, bytes):
        data = source
    elif isinstance(source, (str, Path)):
        data = Path(source).read_bytes()
    else:
        data = source.read()
    if isinstance(data, str):
        return data
    try:
        return data.decode("utf-8-sig")
    except UnicodeDecodeError as e:
        raise PanelValidationError(f"Panel file is not valid UTF-8: {e}") from e


def _parse_times(raw: pd.Series) -> List[TimeLabel]:
    labels = [str(v).strip() for v in raw]
    for row, label in enumerate(labels, start=1):
        if not label or label == "nan":
            raise PanelValidationError("Missing time label", row=row, column="time")
    if all(_INTEGER.match(label) for label in labels):
        return [int(label) for label in labels]
    return labels


def load_panel(source: Source, treated: str, t0: int) -> Panel:
    """
    Load a wide-format panel CSV

    Rows in error messages are 1-based data rows (the header is not counted).

    Args:
        source: Raw bytes, a path, or an open stream
        treated: Header label of the treated unit
        t0: Number of pre-treatment periods

    Returns:
        Validated Panel with control column order preserved from the file

    Raises:
        PanelValidationError: malformed CSV, unknown treated label, bad cell, t0 out of range
    """
    text = _read_text(source)

    try:
        frame = pd.read_csv(
            io.StringIO(text),
            header=None,
            dtype=str,
            keep_default_na=False,
            skip_blank_lines=True,
        )
    except (pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise PanelValidationError(f"Malformed CSV: {e}") from e

    header = [str(h).strip() for h in frame.iloc[0]]
    if not header or header[0] != "time":
        raise PanelValidationError("First header cell must be 'time'")
    labels = header[1:]
    if len(labels) < 2:
        raise PanelValidationError("Panel needs a treated unit and at least one control column")
    for position, label in enumerate(labels, start=2):
        if not label:
            raise PanelValidationError(f"Empty unit label in header column {position}")
    if len(set(labels)) != len(labels):
        raise PanelValidationError("Duplicate unit labels in header")

    body = frame.iloc[1:].reset_index(drop=True)
    if body.empty:
        raise PanelValidationError("Panel has no data rows")

    times = _parse_times(body.iloc[:, 0])
    cells = body.iloc[:, 1:].copy()
    cells.columns = labels

    stripped = cells.apply(lambda col: col.fillna("").astype(str).str.strip())
    values = stripped.apply(lambda col: pd.to_numeric(col, errors="coerce"))
    bad = values.isna().to_numpy() | ~np.isfinite(values.to_numpy(dtype=float))
    if bad.any():
        row, col = np.argwhere(bad)[0]
        cell = stripped.iat[row, col]
        reason = "Missing value" if cell == "" else f"Invalid numeric value {cell!r}"
        raise PanelValidationError(reason, row=int(row) + 1, column=labels[col])

    if treated not in labels:
        raise PanelValidationError(f"Unknown treated unit {treated!r}")

    n_rows = len(times)
    if not 2 <= t0 < n_rows:
        raise PanelValidationError(f"t0={t0} out of range: need 2 <= t0 < {n_rows}")

    panel = Panel(
        times=times,
        outcomes=values.to_numpy(dtype=float),
        treated_col=labels.index(treated),
        t0=t0,
        unit_labels=labels,
    )

    logger.info(
        "Panel loaded",
        treated=treated,
        controls=panel.n_controls,
        t0=panel.t0,
        t1=panel.t1
    )
    return panel


def dump_panel(panel: Panel, sink: Optional[Union[str, Path, TextIO]] = None) -> str:
    """
    Serialize a panel to the wide CSV dialect

    Floats use shortest round-trip formatting so that loading the output
    reproduces the panel exactly.

    Args:
        panel: Panel to serialize
        sink: Optional path or text stream to write to

    Returns:
        CSV text
    """
    cells = pd.DataFrame(panel.outcomes, columns=panel.unit_labels).map(
        lambda v: repr(float(v))
    )
    cells.insert(0, "time", [str(t) for t in panel.times])
    text = cells.to_csv(index=False, lineterminator="\n")

    if isinstance(sink, (str, Path)):
        Path(sink).write_text(text, encoding="utf-8")
    elif sink is not None:
        sink.write(text)
    return text
