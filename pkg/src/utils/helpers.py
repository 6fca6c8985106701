"""
Logging setup and grid helpers shared by the command line
"""
import logging
import sys
from typing import Optional

import numpy as np

from config import settings

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def setup_logging(level: Optional[str] = None) -> None:
    """Send log records to stderr; stdout carries the CSV/JSON payloads"""
    level = (level or settings.LOG_LEVEL).upper()
    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root.addHandler(handler)
    root.setLevel(level)


def uniform_grid(lo: float, hi: float, points: int) -> np.ndarray:
    """points equally spaced values from lo to hi inclusive"""
    return np.linspace(lo, hi, points)
