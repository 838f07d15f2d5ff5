"""
Panel Models
Observed outcome panel with one treated unit and a pre/post split
"""

from typing import Any, Dict, List, NamedTuple, Optional, Sequence, Union

import numpy as np

TimeLabel = Union[int, str]


class PanelValidationError(ValueError):
    """Raised when panel data violate the panel invariants"""

    def __init__(self, message: str, row: Optional[int] = None, column: Optional[str] = None):
        location = []
        if row is not None:
            location.append(f"row {row}")
        if column is not None:
            location.append(f"column '{column}'")
        if location:
            message = f"{message} ({', '.join(location)})"
        super().__init__(message)
        self.row = row
        self.column = column


class PanelSplit(NamedTuple):
    """Pre/post blocks of a panel; X matrices exclude the treated column"""
    x_pre: np.ndarray
    y_pre: np.ndarray
    x_post: np.ndarray
    y_post: np.ndarray


class Panel:
    """
    Balanced panel of outcomes, units in columns

    Values are copied and frozen on construction, so a Panel can be shared
    read-only across threads.
    """

    def __init__(
        self,
        times: Sequence[TimeLabel],
        outcomes,
        treated_col: int,
        t0: int,
        unit_labels: Sequence[str]
    ):
        matrix = np.array(outcomes, dtype=float)
        times = list(times)
        unit_labels = [str(label) for label in unit_labels]

        if matrix.ndim != 2:
            raise PanelValidationError(f"Outcomes must be a matrix, got {matrix.ndim} dimensions")
        n_periods, n_units = matrix.shape
        if n_units < 2:
            raise PanelValidationError("Panel needs a treated unit and at least one control")
        if len(times) != n_periods:
            raise PanelValidationError(
                f"{len(times)} time labels for {n_periods} outcome rows"
            )
        if len(unit_labels) != n_units:
            raise PanelValidationError(
                f"{len(unit_labels)} unit labels for {n_units} outcome columns"
            )
        if len(set(unit_labels)) != n_units:
            raise PanelValidationError("Unit labels must be unique")
        if not 0 <= int(treated_col) < n_units:
            raise PanelValidationError(f"Treated column {treated_col} out of range")
        if int(t0) < 2:
            raise PanelValidationError(f"Need at least 2 pre-treatment periods, got t0={t0}")
        if n_periods - int(t0) < 1:
            raise PanelValidationError(
                f"Need at least 1 post-treatment period, got t0={t0} with {n_periods} periods"
            )

        bad = np.argwhere(~np.isfinite(matrix))
        if bad.size:
            row, col = bad[0]
            raise PanelValidationError(
                "Non-finite outcome", row=int(row) + 1, column=unit_labels[col]
            )

        for position in range(1, n_periods):
            if not _precedes(times[position - 1], times[position]):
                raise PanelValidationError(
                    f"Time labels must be strictly increasing: "
                    f"{times[position - 1]!r} then {times[position]!r}",
                    row=position + 1
                )

        matrix.setflags(write=False)
        self.times: List[TimeLabel] = times
        self.outcomes = matrix
        self.treated_col = int(treated_col)
        self.t0 = int(t0)
        self.unit_labels: List[str] = unit_labels

    @property
    def n_periods(self) -> int:
        """T"""
        return self.outcomes.shape[0]

    @property
    def t1(self) -> int:
        """Number of post-treatment periods"""
        return self.n_periods - self.t0

    @property
    def n_controls(self) -> int:
        """N"""
        return self.outcomes.shape[1] - 1

    @property
    def control_cols(self) -> List[int]:
        return [c for c in range(self.outcomes.shape[1]) if c != self.treated_col]

    @property
    def treated_label(self) -> str:
        return self.unit_labels[self.treated_col]

    @property
    def control_labels(self) -> List[str]:
        return [self.unit_labels[c] for c in self.control_cols]

    @property
    def treated(self) -> np.ndarray:
        """Treated outcome series (length T)"""
        return self.outcomes[:, self.treated_col]

    @property
    def controls(self) -> np.ndarray:
        """Control outcome matrix (T x N), file order preserved"""
        return self.outcomes[:, self.control_cols]

    def with_outcomes(self, outcomes) -> "Panel":
        """Copy with a replaced outcome matrix"""
        return Panel(self.times, outcomes, self.treated_col, self.t0, self.unit_labels)

    def shift_treated(self, delta: float, post_only: bool = True) -> "Panel":
        """Copy with delta added to the treated outcome (post period or all periods)"""
        matrix = self.outcomes.copy()
        start = self.t0 if post_only else 0
        matrix[start:, self.treated_col] += delta
        return self.with_outcomes(matrix)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary"""
        return {
            'times': self.times,
            'unit_labels': self.unit_labels,
            'treated': self.treated_label,
            't0': self.t0,
            't1': self.t1,
            'outcomes': self.outcomes.tolist(),
        }

    def __repr__(self) -> str:
        return (
            f"Panel(treated={self.treated_label!r}, N={self.n_controls}, "
            f"T0={self.t0}, T1={self.t1})"
        )


def _precedes(a: TimeLabel, b: TimeLabel) -> bool:
    if isinstance(a, int) and isinstance(b, int):
        return a < b
    return str(a) < str(b)


def split_pre_post(panel: Panel) -> PanelSplit:
    """
    Split a panel into pre/post design matrices and treated series

    Args:
        panel: Validated panel

    Returns:
        PanelSplit(x_pre T0xN, y_pre T0, x_post T1xN, y_post T1)
    """
    controls = panel.controls
    treated = panel.treated
    t0 = panel.t0
    return PanelSplit(
        x_pre=controls[:t0],
        y_pre=treated[:t0],
        x_post=controls[t0:],
        y_post=treated[t0:],
    )
