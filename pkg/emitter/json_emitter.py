import json

from emitter.base import TableEmitter, json_default


class JSONEmitter(TableEmitter):
    """
    A class to emit JSON tables.

    The document is ``{"meta": {...}, "columns": [...], "rows": [{column: value}, ...]}``.
    Python's float repr keeps every value bit-exact through a parse.
    """

    suffix = ".json"

    def emit(self) -> str:
        document = {
            "meta": self.table.meta,
            "columns": self.table.columns,
            "rows": self.table.records(),
        }
        return json.dumps(document, indent=2, default=json_default) + "\n"
