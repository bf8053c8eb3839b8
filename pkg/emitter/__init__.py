"""
Emitter package for ewens-ldp.

This package serializes result tables, together with the metadata needed to
reproduce them, as CSV or JSON.
"""

from typing import Optional

from constants import OutputFormat
from emitter.base import TableEmitter
from emitter.csv_emitter import CSVEmitter
from emitter.json_emitter import JSONEmitter
from ldp_lab.tables import ResultTable

__all__ = ["CSVEmitter", "JSONEmitter", "TableEmitter", "get_emitter"]


def get_emitter(table: ResultTable, format_type: Optional[str] = OutputFormat.JSON) -> TableEmitter:
    """
    Return the emitter for an output format.

    Raises:
        ValueError: If the format is not json or csv.
    """
    if format_type == OutputFormat.CSV:
        return CSVEmitter(table)
    if format_type == OutputFormat.JSON:
        return JSONEmitter(table)
    raise ValueError(f"Unsupported format: {format_type}")
