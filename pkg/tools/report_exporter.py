import csv
import io
import json
import math
import os
import tempfile
from dataclasses import dataclass
from datetime import datetime
from typing import Any, Dict, Iterable, List, Optional

from tools.logcomplex import LogComplex, lc_abs_log

CSV_HEADER = [
    "family", "c", "T", "s",
    "value_log_mag", "value_arg", "asym_log_mag", "asym_arg", "rel_err",
]
FIT_PREFIX = "#fit"


@dataclass(frozen=True)
class OutputRow:
    family: str
    c: float
    T: float
    s: float
    value: LogComplex
    asymptotic: LogComplex
    rel_err: float


def format_number(x: float) -> str:
    """17 significant digits; infinities spelled inf / -inf"""
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.17g}"


def _row_fields(row: OutputRow) -> List[str]:
    return [
        row.family,
        format_number(row.c),
        format_number(row.T),
        format_number(row.s),
        format_number(lc_abs_log(row.value)),
        format_number(row.value.arg),
        format_number(lc_abs_log(row.asymptotic)),
        format_number(row.asymptotic.arg),
        format_number(row.rel_err),
    ]


def generate_rows_csv(rows: Iterable[OutputRow], fit: Optional[tuple] = None) -> str:
    """
    Render rows as CSV text

    Args:
        rows: output rows in grid order
        fit: optional (fitted_order, fit_r2) written as a ``#fit`` footer

    Returns:
        CSV text with header, one line per row and the optional footer
    """
    output = io.StringIO()
    writer = csv.writer(output, lineterminator="\n")

    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(_row_fields(row))

    if fit is not None:
        fitted_order, fit_r2 = fit
        writer.writerow([FIT_PREFIX, format_number(fitted_order), format_number(fit_r2)])

    return output.getvalue()


def generate_rows_table(rows: Iterable[OutputRow]) -> str:
    """Fixed-width human-readable table"""
    lines = [
        f"{'family':<6} {'c':>8} {'T':>8} {'s':>12} "
        f"{'value_log_mag':>22} {'value_arg':>12} {'asym_log_mag':>22} {'asym_arg':>12} {'rel_err':>12}"
    ]
    for row in rows:
        t_text = "inf" if math.isinf(row.T) else f"{row.T:.4g}"
        lines.append(
            f"{row.family:<6} {row.c:>8.4g} {t_text:>8} "
            f"{row.s:>12.6g} {row.value.log_mag:>22.15g} {row.value.arg:>12.8f} "
            f"{row.asymptotic.log_mag:>22.15g} {row.asymptotic.arg:>12.8f} {row.rel_err:>12.4e}"
        )
    return "\n".join(lines) + "\n"


def generate_rows_json(rows: Iterable[OutputRow], fit: Optional[tuple] = None) -> str:
    """JSON document with the same columns as the CSV"""
    export: Dict[str, Any] = {
        "rows": [dict(zip(CSV_HEADER, _row_fields(row))) for row in rows],
        "export_info": {
            "created_at": datetime.now().isoformat(),
            "format": "json",
            "version": "1.0",
        },
    }
    if fit is not None:
        export["fit"] = {"fitted_order": fit[0], "fit_r2": fit[1]}
    return json.dumps(export, indent=2) + "\n"


def write_text_atomic(path: str, text: str) -> None:
    """Write through a temporary file in the target directory and rename it into place"""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp_path = tempfile.mkstemp(prefix=".tmp-", suffix=".csv", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.remove(tmp_path)
        raise


def validate_csv_export(text: str) -> Dict[str, Any]:
    """Validate a rendered sweep CSV"""
    validation = {
        "valid": True,
        "errors": [],
        "warnings": [],
    }

    lines = text.splitlines()
    if not lines or lines[0] != ",".join(CSV_HEADER):
        validation["valid"] = False
        validation["errors"].append("Header does not match the sweep schema")
        return validation

    body = [line for line in lines[1:] if not line.startswith(FIT_PREFIX)]
    footer = [line for line in lines[1:] if line.startswith(FIT_PREFIX)]

    for number, line in enumerate(body, start=2):
        if len(line.split(",")) != len(CSV_HEADER):
            validation["valid"] = False
            validation["errors"].append(f"Line {number} has the wrong number of columns")

    if not footer:
        validation["warnings"].append("No #fit footer present")

    return validation
