import csv
import io
import json
import logging
import math
import sys

logger = logging.getLogger(__name__)

# ============================================================================
# REPORT PROTOCOL
# ============================================================================

class ReportType:
    """Report type constants"""
    TABLE = "table"
    SPECTRUM = "spectrum"
    VERIFY = "verify"


class OutputFormat:
    """Table output formats"""
    CSV = "csv"
    JSON = "json"
    ALL = (CSV, JSON)


def clean_number(value):
    """
    Normalise a number for output.

    Args:
        value: int, float or numpy scalar

    Returns:
        float with -0.0 mapped to 0.0, or None for non-finite values
    """
    value = float(value)
    if not math.isfinite(value):
        return None
    return value + 0.0


def format_number(value):
    """Shortest round-trip text for a float (repr), never "-0.0"."""
    cleaned = clean_number(value)
    return repr(cleaned) if cleaned is not None else repr(float(value))


def create_report(report_type, data):
    """
    Create a JSON report.

    Args:
        report_type: Type of report (from ReportType class)
        data: Dictionary with report fields, built in a fixed key order

    Returns:
        JSON string {"type": ..., **data} terminated by a newline
    """
    report = {"type": report_type}
    report.update(data)
    return json.dumps(report, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def parse_report(json_string):
    """
    Parse a JSON report.

    Returns:
        Dictionary with a 'type' key, or None if the text is not JSON
    """
    try:
        return json.loads(json_string)
    except json.JSONDecodeError:
        return None


# ============================================================================
# TABLES
# ============================================================================

def table_to_csv(columns, rows):
    """
    Comma-separated table with a header row and LF line endings.

    Args:
        columns: Column names
        rows: Iterable of numeric rows
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_number(v) for v in row])
    return buffer.getvalue()


def table_to_json(columns, rows):
    data = {
        "columns": list(columns),
        "rows": [[clean_number(v) for v in row] for row in rows],
    }
    return create_report(ReportType.TABLE, data)


def format_table(columns, rows, output_format=OutputFormat.CSV):
    if output_format == OutputFormat.JSON:
        return table_to_json(columns, rows)
    return table_to_csv(columns, rows)


def read_csv_table(text):
    """Parse CSV text written by table_to_csv into (columns, rows of floats)."""
    reader = csv.reader(io.StringIO(text))
    columns = next(reader)
    return columns, [[float(v) for v in row] for row in reader]


# ============================================================================
# OUTPUT
# ============================================================================

def write_output(text, path=None):
    """
    Write text to a file, or to stdout when path is None or "-".

    Returns:
        True on success, False if the file could not be written
    """
    if path in (None, "-"):
        sys.stdout.write(text)
        sys.stdout.flush()
        return True
    try:
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        return True
    except OSError as e:
        logger.error("could not write %s: %s", path, e)
        return False
