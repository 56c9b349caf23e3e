"""
Report Writer Module

Writes suite rows to CSV, JSON or Excel and reads CSV/JSON reports back.
Rows are sorted by (scenario_id, check, subcase) before writing and reals are
serialized with 17 significant digits, so identical runs give byte-identical
files. Reports carry no timestamps.

Usage:
    from core.report_writer import ReportWriter, emit_report, load_report

    emit_report(rows, "csv", "report.csv")
    rows = load_report("report.csv")
"""

import csv
import io
import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, List, Optional

import openpyxl
from openpyxl.styles import Alignment, Font, PatternFill
from openpyxl.utils import get_column_letter

# Configure logging
logger = logging.getLogger(__name__)

COLUMNS = [
    'scenario_id', 'check', 'subcase', 'lhs', 'rhs_canonical', 'rhs_variant',
    'slack', 'holds', 'equality', 'equality_case', 'seed',
]
REAL_COLUMNS = ('lhs', 'rhs_canonical', 'rhs_variant', 'slack')
BOOL_COLUMNS = ('holds', 'equality')
JSON_EXTRA_COLUMNS = ('asserted', 'notes')


def format_real(value: Optional[float]) -> str:
    """17 significant digits; '' for missing values."""
    if value is None:
        return ''
    return format(float(value), '.17g')


def _parse_real(text: str) -> Optional[float]:
    return None if text == '' else float(text)


def sort_rows(rows: List[Dict[str, Any]]) -> List[Dict[str, Any]]:
    return sorted(rows, key=lambda row: (str(row['scenario_id']), str(row['check']), str(row['subcase'])))


def _cell_text(row: Dict[str, Any], column: str) -> str:
    value = row.get(column)
    if column in REAL_COLUMNS:
        return format_real(value)
    if column in BOOL_COLUMNS:
        return 'true' if value else 'false'
    return '' if value is None else str(value)


def _json_value(row: Dict[str, Any], column: str) -> Any:
    value = row.get(column)
    if column in REAL_COLUMNS:
        if value is None:
            return None
        value = float(value)
        # JSON has no NaN/inf literals; keep the 17-digit text instead
        return value if math.isfinite(value) else format_real(value)
    if column in BOOL_COLUMNS or column == 'asserted':
        return bool(value) if value is not None else True
    if column == 'seed':
        return int(value)
    return '' if value is None else str(value)


def _json_row(row: Dict[str, Any], columns: List[str]) -> str:
    """One JSON row object; finite reals are written as 17-digit number literals."""
    fields = []
    for column in columns:
        value = _json_value(row, column)
        text = format_real(value) if isinstance(value, float) else json.dumps(value)
        fields.append(f"      {json.dumps(column)}: {text}")
    return "    {\n" + ",\n".join(fields) + "\n    }"


class ReportWriter:
    """
    Serializes suite rows in one of the supported formats.

    Attributes:
        path (Path): Output file
        fmt (str): 'csv', 'json' or 'xlsx'
        headers (List[str]): Column order
    """

    FORMATS = ('csv', 'json', 'xlsx')

    def __init__(self, path: str, fmt: str = 'csv'):
        """
        Initialize the report writer.

        Args:
            path (str): Output file path
            fmt (str): Report format (default: "csv")

        Raises:
            ValueError: If the format is unknown
        """
        if fmt not in self.FORMATS:
            raise ValueError(f"Unknown report format '{fmt}', expected one of {self.FORMATS}")
        self.path = Path(path)
        self.fmt = fmt
        self.headers = list(COLUMNS)

    def render(self, rows: List[Dict[str, Any]]) -> str:
        """
        Render rows as CSV or JSON text.

        Args:
            rows (List[Dict[str, Any]]): Suite rows

        Returns:
            str: File contents
        """
        rows = sort_rows(rows)
        if self.fmt == 'csv':
            buffer = io.StringIO()
            writer = csv.writer(buffer, lineterminator='\n')
            writer.writerow(self.headers)
            for row in rows:
                writer.writerow([_cell_text(row, column) for column in self.headers])
            return buffer.getvalue()
        if self.fmt == 'json':
            columns = self.headers + list(JSON_EXTRA_COLUMNS)
            body = ",\n".join(_json_row(row, columns) for row in rows)
            rows_text = f"[\n{body}\n  ]" if rows else "[]"
            return f"{{\n  \"columns\": {json.dumps(self.headers)},\n  \"rows\": {rows_text}\n}}\n"
        raise ValueError("Excel reports are binary; use write()")

    def write(self, rows: List[Dict[str, Any]]) -> Path:
        """
        Write rows to the output file.

        Args:
            rows (List[Dict[str, Any]]): Suite rows

        Returns:
            Path: The written file

        Raises:
            OSError: If the file cannot be written
        """
        if self.path.parent and not self.path.parent.exists():
            self.path.parent.mkdir(parents=True, exist_ok=True)
        if self.fmt == 'xlsx':
            self._write_excel(sort_rows(rows))
        else:
            with open(self.path, 'w', encoding='utf-8', newline='') as handle:
                handle.write(self.render(rows))
        logger.info(f"Report with {len(rows)} rows written to {self.path}")
        return self.path

    def _write_excel(self, rows: List[Dict[str, Any]]):
        """Write rows to a workbook with a styled header row."""
        workbook = openpyxl.Workbook()
        worksheet = workbook.active
        worksheet.title = "Inequality Report"

        for col, header in enumerate(self.headers, 1):
            cell = worksheet.cell(row=1, column=col, value=header)
            cell.font = Font(bold=True, color="FFFFFF")
            cell.fill = PatternFill(start_color="366092", end_color="366092", fill_type="solid")
            cell.alignment = Alignment(horizontal="center", vertical="center")

        widths = [len(header) + 2 for header in self.headers]
        for row_index, row in enumerate(rows, 2):
            for col, column in enumerate(self.headers, 1):
                # text keeps the 17-digit representation exact
                text = _cell_text(row, column)
                worksheet.cell(row=row_index, column=col, value=text)
                widths[col - 1] = max(widths[col - 1], min(len(text) + 2, 50))

        for col, width in enumerate(widths, 1):
            worksheet.column_dimensions[get_column_letter(col)].width = width
        workbook.save(str(self.path))


def emit_report(rows: List[Dict[str, Any]], fmt: str, path: str) -> Path:
    """
    Convenience function to write a report.

    Args:
        rows (List[Dict[str, Any]]): Suite rows
        fmt (str): 'csv', 'json' or 'xlsx'
        path (str): Output file

    Returns:
        Path: The written file
    """
    return ReportWriter(path, fmt).write(rows)


def _row_from_text(record: Dict[str, str]) -> Dict[str, Any]:
    row: Dict[str, Any] = {}
    for column in COLUMNS:
        text = record.get(column, '')
        if column in REAL_COLUMNS:
            row[column] = _parse_real(text)
        elif column in BOOL_COLUMNS:
            row[column] = text == 'true'
        elif column == 'seed':
            row[column] = int(text)
        else:
            row[column] = text
    return row


def load_report(path: str) -> List[Dict[str, Any]]:
    """
    Read a CSV or JSON report back into rows.

    Args:
        path (str): Report written by emit_report

    Returns:
        List[Dict[str, Any]]: Rows with typed values (reals, bools, int seed)

    Raises:
        ValueError: If the extension is not .csv or .json
    """
    path = Path(path)
    suffix = path.suffix.lower()
    if suffix == '.csv':
        with open(path, 'r', encoding='utf-8', newline='') as handle:
            return [_row_from_text(record) for record in csv.DictReader(handle)]
    if suffix == '.json':
        with open(path, 'r', encoding='utf-8') as handle:
            payload = json.load(handle)
        rows = []
        for record in payload['rows']:
            row = {}
            for column in COLUMNS + list(JSON_EXTRA_COLUMNS):
                value = record.get(column)
                if column in REAL_COLUMNS and value is not None:
                    value = float(value)
                row[column] = value
            rows.append(row)
        return rows
    raise ValueError(f"Cannot load report with extension '{suffix}'")
