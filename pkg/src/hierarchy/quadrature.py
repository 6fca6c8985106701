"""
Slow reference path for tower levels: adaptive quadrature along polylines
"""
import logging
import math
from typing import Optional, Sequence

import numpy as np
from scipy.integrate import quad

from config import settings
from src.hierarchy.seeds import Seed, seed_log
from src.phase.paths import PathSpec
from src.phase.tracking import track_argument
from src.utils.errors import DomainError, NearZeroError, QuadratureError

logger = logging.getLogger(__name__)


class _SeedLogOnPath:
    """log S along a path, on the branch continued from the path start"""

    def __init__(self, seed: Seed, path: PathSpec, zero_guard: float):
        self.seed = seed
        self.path = path
        self.offset = 0.0
        tracked = path
        delta = 10.0 * zero_guard
        if path.start == 0:
            tracked = tracked.trimmed_start(delta)
            self.offset = delta
        if path.end == 0:
            tracked = tracked.trimmed_end(delta)

        parameters, _, unwrapped, _, _ = track_argument(seed.value, tracked)
        first = tracked.start
        if path.start == 0:
            # log S(w) = log w + log(S(w)/w) with the principal log w near 0
            anchor = float(np.angle(first) + np.angle(seed.ratio(first)))
        else:
            anchor = float(seed_log(seed, first, zero_guard=zero_guard).imag)
        shift = 2.0 * np.pi * np.round((anchor - unwrapped[0]) / (2.0 * np.pi))
        self.parameters = parameters + self.offset
        self.unwrapped = unwrapped + shift

    def __call__(self, s: float) -> complex:
        w = self.path.point_at(s)
        value = self.seed.value(w)
        principal = float(np.angle(value))
        guide = float(np.interp(s, self.parameters, self.unwrapped))
        arg = principal + 2.0 * np.pi * round((guide - principal) / (2.0 * np.pi))
        return complex(math.log(abs(value)), arg)


def _quad_part(func, a: float, b: float, tol: float, label: str) -> float:
    result = quad(func, a, b, epsabs=tol, epsrel=0.0, limit=200, full_output=1)
    value, abserr = result[0], result[1]
    if len(result) == 4 and abserr > tol:
        raise QuadratureError(f"{label} quadrature error {abserr:.3g} exceeds tol={tol:g}: {result[3]}")
    return value


def path_integrate(seed: Seed, path: PathSpec, n: int, tol: Optional[float] = None,
                   initial: Optional[Sequence[complex]] = None,
                   zero_guard: Optional[float] = None) -> complex:
    """
    n-fold base-point integral of log S along a polyline, i.e. F_{n+1}(path.end)

    Repeated integration is collapsed into the single kernel
    (z - w)^{n-1}/(n-1)!, integrated segment by segment.

    Args:
        seed: Seed function
        path: Polyline starting at 0, or at a point with known tower values
        n: Number of integrations, at least 1
        tol: Absolute quadrature tolerance per real/imaginary part and segment
        initial: F_2(a)..F_{n+1}(a) at a nonzero start a, in this order
        zero_guard: Smallest admissible distance to a zero of S

    Returns:
        F_{n+1}(z) at the path's end point z

    Raises:
        NearZeroError: if the path comes within zero_guard of a zero of S
            other than a base point at the origin
        QuadratureError: if a segment integral misses tol
    """
    tol = settings.QUAD_TOL if tol is None else tol
    zero_guard = settings.ZERO_GUARD if zero_guard is None else zero_guard
    if int(n) != n or n < 1:
        raise DomainError(f"number of integrations must be >= 1, got {n}")
    if any(w == 0 for w in path.waypoints[1:-1]):
        raise NearZeroError("path passes through the zero at the origin")
    clearance = seed.clearance(path, skip_origin=True)
    if clearance <= zero_guard:
        raise NearZeroError(
            f"path passes within {clearance:.3g} of a zero of the {seed.describe()} seed (zero_guard={zero_guard:g})"
        )

    start, end = path.start, path.end
    if start != 0:
        if initial is None or len(initial) != n:
            raise DomainError(f"a path starting at {start} needs {n} initial values F_2..F_{n + 1}")
        total = sum(complex(initial[n - 1 - j]) * (end - start) ** j / math.factorial(j) for j in range(n))
    else:
        total = 0j

    log_seed = _SeedLogOnPath(seed, path, zero_guard)
    knots = path.knots
    scale = 1.0 / math.factorial(n - 1)
    for k, (a, b) in enumerate(zip(path.waypoints, path.waypoints[1:])):
        direction = (b - a) / abs(b - a)

        def integrand(s):
            w = path.point_at(s)
            return log_seed(s) * (end - w) ** (n - 1) * scale * direction

        s_a, s_b = knots[k], knots[k + 1]
        re = _quad_part(lambda s: integrand(s).real, s_a, s_b, tol, f"segment {k} real")
        im = _quad_part(lambda s: integrand(s).imag, s_a, s_b, tol, f"segment {k} imaginary")
        total += complex(re, im)

    logger.debug("path_integrate %s n=%d to %s: %s", seed.describe(), n, end, total)
    return total
