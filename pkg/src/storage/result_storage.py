"""
hetsqueeze - Result Storage Module

Writes result tables as CSV: header row, LF line endings, floats as shortest
round-trip decimals, booleans as true/false. No timestamps go into the data,
so identical runs produce identical files.
"""

import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, TextIO

import numpy as np
import pandas as pd


def format_value(value: Any) -> str:
    """Render one CSV cell."""
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return str(value)


class ResultStorage:
    """Manages CSV output of result rows."""

    def to_frame(self, rows: List[Dict[str, Any]], columns: Sequence[str]) -> pd.DataFrame:
        """
        Build the formatted table.

        Args:
            rows: Row dictionaries (extra keys are ignored)
            columns: Column order

        Returns:
            DataFrame of formatted strings
        """
        formatted = [{column: format_value(row.get(column)) for column in columns} for row in rows]
        return pd.DataFrame(formatted, columns=list(columns), dtype=object)

    def save_rows(
        self,
        rows: List[Dict[str, Any]],
        columns: Sequence[str],
        output_path: Optional[str] = None,
        stream: Optional[TextIO] = None,
    ) -> Optional[str]:
        """
        Write rows to ``output_path``, or to ``stream`` (standard output by default).

        Returns:
            Path written, or None when writing to a stream

        Raises:
            OSError: if the output file cannot be written
        """
        df = self.to_frame(rows, columns)
        if output_path:
            path = Path(output_path)
            if path.parent and not path.parent.exists():
                path.parent.mkdir(parents=True, exist_ok=True)
            with open(path, "w", encoding="utf-8", newline="") as f:
                df.to_csv(f, index=False, lineterminator="\n")
            return str(path)
        df.to_csv(stream or sys.stdout, index=False, lineterminator="\n")
        return None
