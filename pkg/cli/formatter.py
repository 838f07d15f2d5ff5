"""
CLI Output Formatting
Tables for command output
"""

from typing import List, Optional

from inference.results import CrossFitResult


def _fixed(value: Optional[float], digits: int = 2) -> str:
    return "n/a" if value is None else f"{value:.{digits}f}"


class OutputFormatter:
    """Format CLI output"""

    @staticmethod
    def format_table(data: List[list], headers: list) -> str:
        """Format data as an aligned table"""
        if not data:
            return "No data"

        col_widths = [len(str(h)) for h in headers]
        for row in data:
            for i, val in enumerate(row):
                if i < len(col_widths):
                    col_widths[i] = max(col_widths[i], len(str(val)))

        lines = []
        header_row = " | ".join(str(h).ljust(col_widths[i]) for i, h in enumerate(headers))
        lines.append(header_row)
        lines.append("-" * len(header_row))
        for row in data:
            lines.append(" | ".join(str(val).ljust(col_widths[i]) for i, val in enumerate(row)))

        return "\n".join(lines)

    @classmethod
    def format_crossfit(cls, result: CrossFitResult) -> str:
        """One-row table of a cross-fitted estimate, two decimals"""
        if result.ci is None:
            ci = "n/a"
        else:
            ci = f"[{_fixed(result.ci[0])}, {_fixed(result.ci[1])}]"
        level = f"{100 * (1 - result.alpha):g}% CI"
        row = [
            result.method.upper(),
            result.k,
            result.r,
            _fixed(result.tau_hat),
            ci,
            _fixed(result.sigma_hat, 3),
            _fixed(result.t_stat, 3),
            _fixed(result.p_value, 3),
        ]
        headers = ["Method", "K", "r", "ATT", level, "sigma", "t", "p-value"]
        return cls.format_table([row], headers)
