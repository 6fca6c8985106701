"""
Table and report writers - CSV through pandas, JSON as text
"""
import io
import logging
import sys
from pathlib import Path
from typing import Optional, TextIO

import pandas as pd

from config import settings

logger = logging.getLogger(__name__)

# 17 significant digits, locale independent
FLOAT_FORMAT = '%.16e'


class TableExporter:
    """Write tables and JSON payloads to a file or to standard output"""

    def __init__(self, output_path: Optional[str] = None, stream: Optional[TextIO] = None):
        """
        Args:
            output_path: Destination file; relative names are resolved
                against CLAUSEN_OUTPUT_DIR. None writes to the stream.
            stream: Text stream used when no path is given (default stdout)
        """
        self.path = settings.output_path(output_path) if output_path else None
        self.stream = stream

    @staticmethod
    def to_csv_text(frame: pd.DataFrame) -> str:
        """CSV text with a header row, no index and '\\n' line endings"""
        buffer = io.StringIO()
        frame.to_csv(buffer, index=False, float_format=FLOAT_FORMAT, lineterminator='\n')
        return buffer.getvalue()

    def write_table(self, frame: pd.DataFrame) -> None:
        self._emit(self.to_csv_text(frame))
        logger.debug("wrote %d rows", len(frame))

    def write_json(self, text: str) -> None:
        self._emit(text if text.endswith('\n') else text + '\n')

    def _emit(self, text: str) -> None:
        if self.path is None:
            (self.stream or sys.stdout).write(text)
            return
        Path(self.path).parent.mkdir(parents=True, exist_ok=True)
        with open(self.path, 'w', encoding='utf-8', newline='') as f:
            f.write(text)
        logger.info("Saved %s", self.path)
