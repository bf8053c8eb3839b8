"""Base emitter module for ewens-ldp.

This module provides the base class for all table emitters.
"""

import os
import tempfile

from ldp_lab.tables import ResultTable, plain


class TableEmitter:
    """
    Base class for table emitters.

    This class defines the interface for all emitters and writes their
    output atomically.
    """

    suffix = ""

    def __init__(self, table: ResultTable):
        """
        Initialize the TableEmitter.

        Args:
            table: The table to serialize, metadata included.
        """
        self.table = table

    def emit(self) -> str:
        """
        Serialize the table.

        Returns:
            The serialized table as a string.
        """
        raise NotImplementedError("Subclasses must implement emit()")

    def write(self, path: str) -> str:
        """
        Write the serialized table to a file in one step.

        The text goes to a temporary file in the target directory which then
        replaces ``path``, so readers never see a partial file.

        Args:
            path: Destination file.

        Returns:
            The path written.

        Raises:
            OSError: If the directory is not writable.
        """
        text = self.emit()
        directory = os.path.dirname(os.path.abspath(path))
        fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".ewens-ldp-", suffix=self.suffix)
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
                f.write(text)
            os.replace(tmp_path, path)
        except BaseException:
            if os.path.exists(tmp_path):
                os.unlink(tmp_path)
            raise
        return path


def json_default(value):
    """Fallback for json.dumps: numpy values become Python values, anything else its str."""
    converted = plain(value)
    return str(converted) if converted is value else converted

