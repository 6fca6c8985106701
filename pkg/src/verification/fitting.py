"""
Least-squares lines for decay-rate checks
"""
from typing import Iterable, Tuple

import numpy as np

from src.utils.errors import DegenerateFitError


def slope_fit(points: Iterable[Tuple[float, float]]) -> Tuple[float, float, float]:
    """
    Ordinary least-squares line through (log_x, log_y) points

    Args:
        points: At least three finite (log_x, log_y) pairs

    Returns:
        Tuple of (slope, intercept, max_dev) where max_dev is the largest
        vertical distance of a point from the fitted line

    Raises:
        DegenerateFitError: for fewer than three points, non-finite values
            or identical abscissae
    """
    data = np.asarray(list(points), dtype=float)
    if data.ndim != 2 or data.shape[1] != 2 or data.shape[0] < 3:
        raise DegenerateFitError(f"slope fit needs at least 3 (log_x, log_y) pairs, got shape {data.shape}")
    if not np.all(np.isfinite(data)):
        raise DegenerateFitError("slope fit points must be finite")
    x, y = data[:, 0], data[:, 1]
    if np.ptp(x) == 0.0:
        raise DegenerateFitError(f"all abscissae equal {x[0]:g}")
    slope, intercept = np.polyfit(x, y, 1)
    max_dev = float(np.max(np.abs(y - (slope * x + intercept))))
    return float(slope), float(intercept), max_dev


def log_log_points(x, y):
    """Pairs (log x, log y) for positive samples"""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(x <= 0.0) or np.any(y <= 0.0):
        raise DegenerateFitError("log-log points need positive coordinates")
    return list(zip(np.log(x).tolist(), np.log(y).tolist()))
