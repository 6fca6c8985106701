"""
Branch-continuous argument tracking along polyline paths
"""
import logging
import math
from typing import Callable, Optional, Tuple

import numpy as np

from config import settings
from src.phase.paths import PathSpec, segment_point_distance
from src.theta.jacobi import TauParameter
from src.utils.errors import BranchError

logger = logging.getLogger(__name__)


def wrap_phase(delta):
    """Reduce a phase difference to [-π, π)"""
    return (np.asarray(delta) + np.pi) % (2.0 * np.pi) - np.pi


def lattice_points_near(path: PathSpec, tau: TauParameter) -> np.ndarray:
    """Points of ℤ + τℤ inside the path's bounding box enlarged by one period"""
    pts = np.asarray(path.waypoints)
    t = tau.tau
    k_lo = math.floor(pts.imag.min() / t.imag) - 1
    k_hi = math.ceil(pts.imag.max() / t.imag) + 1
    candidates = []
    for k in range(k_lo, k_hi + 1):
        shift = k * t
        m_lo = math.floor(pts.real.min() - shift.real) - 1
        m_hi = math.ceil(pts.real.max() - shift.real) + 1
        candidates.extend(m + shift for m in range(m_lo, m_hi + 1))
    return np.asarray(candidates, dtype=complex)


def path_clearance(path: PathSpec, tau: TauParameter) -> float:
    """Smallest distance between the polyline and the zero lattice of θ₁"""
    lattice = lattice_points_near(path, tau)
    return min(
        segment_point_distance(a, b, lattice)
        for a, b in zip(path.waypoints, path.waypoints[1:])
    )


def track_argument(func: Callable[[np.ndarray], np.ndarray], path: PathSpec,
                   max_step: Optional[float] = None, max_depth: Optional[int] = None
                   ) -> Tuple[np.ndarray, np.ndarray, np.ndarray, float, bool]:
    """
    Continuous branch of arg(func) along a path by adaptive bisection

    Every interval whose wrapped phase increment reaches max_step is halved
    until the increment drops below it. The branch is anchored at the
    principal argument of the first sample.

    Args:
        func: Vectorized nonvanishing function of the complex position
        path: Polyline to follow
        max_step: Largest accepted increment between neighbouring samples
        max_depth: Largest number of halvings of one initial interval

    Returns:
        Tuple of (parameters, positions, unwrapped_arg, max_step_phase, refined)

    Raises:
        BranchError: if an interval still violates max_step at max_depth
    """
    max_step = settings.PHASE_MAX_STEP if max_step is None else max_step
    max_depth = settings.PHASE_MAX_DEPTH if max_depth is None else max_depth

    s0 = path.initial_parameters()
    values = np.asarray(func(path.point_at(s0)), dtype=complex)
    args0 = np.angle(values)

    parameters = [s0[0]]
    principal = [args0[0]]
    refinements = 0

    def refine(s_a, arg_a, s_b, arg_b, depth):
        nonlocal refinements
        if abs(wrap_phase(arg_b - arg_a)) < max_step:
            parameters.append(s_b)
            principal.append(arg_b)
            return
        if depth >= max_depth:
            raise BranchError(
                f"phase step >= {max_step:.3g} persists after {max_depth} bisections near s={s_a:.6g}"
            )
        refinements += 1
        s_mid = 0.5 * (s_a + s_b)
        arg_mid = float(np.angle(func(np.asarray([path.point_at(s_mid)]))[0]))
        refine(s_a, arg_a, s_mid, arg_mid, depth + 1)
        refine(s_mid, arg_mid, s_b, arg_b, depth + 1)

    for i in range(len(s0) - 1):
        refine(s0[i], args0[i], s0[i + 1], args0[i + 1], 0)

    parameters = np.asarray(parameters)
    steps = wrap_phase(np.diff(principal))
    unwrapped = principal[0] + np.concatenate(([0.0], np.cumsum(steps)))
    max_step_phase = float(np.max(np.abs(steps))) if steps.size else 0.0
    if refinements:
        logger.debug("argument tracking inserted %d samples", refinements)
    return parameters, path.point_at(parameters), unwrapped, max_step_phase, refinements > 0
