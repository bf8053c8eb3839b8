import csv
import io
import json
from typing import Any

from emitter.base import TableEmitter, json_default


def format_cell(value: Any) -> str:
    """
    Format one CSV cell.

    Floats use repr, the shortest decimal that reads back to the same double.
    """
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple, dict)):
        return json.dumps(value)
    return str(value)


class CSVEmitter(TableEmitter):
    """
    A class to emit CSV tables.

    The first line is a ``# meta:`` comment holding the metadata as JSON,
    followed by the header row and one line per row.
    """

    suffix = ".csv"

    def emit(self) -> str:
        buffer = io.StringIO()
        buffer.write(f"# meta: {json.dumps(self.table.meta, sort_keys=True, default=json_default)}\n")
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(self.table.columns)
        for row in self.table.rows:
            writer.writerow([format_cell(value) for value in row])
        return buffer.getvalue()
