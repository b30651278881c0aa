from datetime import timedelta
from typing import List, Sequence, Set

from core.errors import ParameterError
from core.models import Cell, VerificationReport

EMPTY_CELL = "."


class TextHelper:
    @staticmethod
    def format_cell(value: Cell) -> str:
        """Render a cell for the grid format"""
        return EMPTY_CELL if value is None else str(value)

    @staticmethod
    def format_rows(grid: Sequence[Sequence[Cell]]) -> List[str]:
        return [" ".join(TextHelper.format_cell(v) for v in row) for row in grid]

    @staticmethod
    def format_values(values: Set[int], limit: int = 12) -> str:
        """Sorted, comma-separated, with an ellipsis past `limit` values"""
        ordered = sorted(values)
        text = ", ".join(str(v) for v in ordered[:limit])
        if len(ordered) > limit:
            text += f", ... ({len(ordered)} total)"
        return "{" + text + "}"

    @staticmethod
    def format_report(report: VerificationReport) -> str:
        """List every violation in a report, one per line"""
        if report.valid:
            return f"valid H({report.n};{report.k})"
        lines = [f"invalid H({report.n};{report.k})"]
        for v in report.fill_violations:
            lines.append(f"  fill: {v.axis.value} {v.index} has {v.count} filled cells, expected {report.k}")
        for v in report.sum_violations:
            lines.append(f"  sum: {v.axis.value} {v.index} sums to {v.actual_sum:+d}")
        for v in report.support_violations:
            if v.missing:
                lines.append(f"  support: missing {TextHelper.format_values(set(v.missing))}")
            if v.duplicated:
                lines.append(f"  support: duplicated {TextHelper.format_values(set(v.duplicated))}")
            if v.out_of_range:
                lines.append(f"  support: out of range {TextHelper.format_values(set(v.out_of_range))}")
        return "\n".join(lines)

    @staticmethod
    def format_elapsed(elapsed: timedelta) -> str:
        return f"{elapsed.total_seconds():.3f}s"


class ValidationHelper:
    @staticmethod
    def require(condition: bool, message: str) -> None:
        """Raise ParameterError unless the condition holds"""
        if not condition:
            raise ParameterError(message)

    @staticmethod
    def is_admissible(n: int, k: int) -> bool:
        """Necessary condition for an H(n;k): nk is 0 or 3 mod 4"""
        return (n * k) % 4 in (0, 3)

    @staticmethod
    def ceil_div(a: int, b: int) -> int:
        return -(-a // b)

