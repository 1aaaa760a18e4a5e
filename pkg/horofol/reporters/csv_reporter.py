"""
CSV report generator for tabular scans
"""
import csv
from pathlib import Path
from typing import Dict, Iterable, Sequence

from .json_reporter import jsonable


class CSVReporter:
    """Write rows of scalars with a fixed column order"""

    def generate(self, rows: Iterable[Dict], columns: Sequence[str], output_path: str) -> None:
        """Generate CSV report; missing and non-finite values are left empty"""
        output_file = Path(output_path)
        output_file.parent.mkdir(parents=True, exist_ok=True)
        with open(output_file, 'w', newline='') as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(columns)
            for row in rows:
                writer.writerow([_cell(row.get(c)) for c in columns])


def _cell(value) -> str:
    value = jsonable(value)
    if value is None:
        return ""
    if isinstance(value, list):
        return " ".join(_cell(v) for v in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)
