"""
Export Service

Tabular output for scan-like commands through polars: CSV text and
human-readable tables. Every cell is written as a string so that large
integers and fractions are exact.
"""

import logging
from typing import Any

import polars as pl

logger = logging.getLogger(__name__)

CSV_DELIMITER = ","

COLUMN_LABELS = {
    "g": "g",
    "d": "d",
    "r": "r",
    "notinterior_value": "64-8d+2g-2",
    "rational_certificate": "P_r2 certificate",
    "elliptic_certificate": "P_r0 certificate",
}


def _format_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return " ".join(_format_cell(v) for v in value)
    return str(value)


def rows_to_frame(rows: list[dict], labels: dict[str, str] | None = None) -> pl.DataFrame:
    """Rows of dicts to a string-typed DataFrame, columns in first-row order."""
    if not rows:
        return pl.DataFrame()
    columns = list(rows[0].keys())
    data = {c: [_format_cell(row.get(c)) for row in rows] for c in columns}
    frame = pl.DataFrame(data, schema={c: pl.Utf8 for c in columns})
    if labels:
        frame = frame.rename({c: labels[c] for c in columns if c in labels})
    return frame


def export_to_csv(rows: list[dict], labels: dict[str, str] | None = None) -> str:
    """CSV text with a header row; empty input yields an empty string."""
    frame = rows_to_frame(rows, labels)
    logger.debug("CSV export: %d rows", frame.height)
    if frame.width == 0:
        return ""
    return frame.write_csv(separator=CSV_DELIMITER)


def render_table(rows: list[dict], labels: dict[str, str] | None = None) -> str:
    frame = rows_to_frame(rows, labels)
    if frame.width == 0:
        return "(no rows)"
    with pl.Config(tbl_rows=-1, tbl_cols=-1, fmt_str_lengths=120, tbl_hide_dataframe_shape=True):
        return str(frame)
