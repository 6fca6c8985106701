"""
Seed functions S_⋆ of the universal recursion

    polylog   S(z) = 1 - e^{iz}      S'(0) = -i   zeros on 2πℤ
    circular  S(z) = 2 sin(πz)       S'(0) = 2π   zeros on ℤ
    elliptic  S(z) = θ̃₁(z|τ)        S'(0) = 1    zeros on ℤ + τℤ
"""
import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from config import settings
from src.phase.paths import PathSpec, segment_point_distance
from src.phase.tracking import lattice_points_near, track_argument, wrap_phase
from src.theta.jacobi import (
    TauParameter,
    ThetaSettings,
    lattice_distance,
    theta1_log_derivative,
    theta1_normalized,
    theta1_over_z,
)
from src.utils.errors import DomainError, NearZeroError

logger = logging.getLogger(__name__)

SEED_KINDS = ('polylog', 'circular', 'elliptic')


def _finish(values, z):
    if np.ndim(z) == 0:
        return complex(values)
    return values


@dataclass(frozen=True)
class Seed:
    """Tagged seed function whose logarithm starts the tower"""

    kind: str
    tau: Optional[TauParameter] = None
    theta_settings: Optional[ThetaSettings] = None

    def __post_init__(self):
        if self.kind not in SEED_KINDS:
            raise DomainError(f"unknown seed kind '{self.kind}', expected one of {', '.join(SEED_KINDS)}")
        if (self.kind == 'elliptic') != (self.tau is not None):
            raise DomainError("tau is required for the elliptic seed and only there")

    @classmethod
    def polylog(cls) -> "Seed":
        return cls('polylog')

    @classmethod
    def circular(cls) -> "Seed":
        return cls('circular')

    @classmethod
    def elliptic(cls, tau: TauParameter, theta_settings: Optional[ThetaSettings] = None) -> "Seed":
        return cls('elliptic', tau, theta_settings)

    @property
    def S_prime_0(self) -> complex:
        return {'polylog': -1j, 'circular': 2.0 * math.pi + 0j, 'elliptic': 1.0 + 0j}[self.kind]

    @property
    def period(self) -> float:
        """Position of the first positive real zero"""
        return 2.0 * math.pi if self.kind == 'polylog' else 1.0

    def default_domain(self, margin: Optional[float] = None):
        margin = settings.TOWER_MARGIN if margin is None else margin
        return (0.0, self.period - margin)

    def describe(self) -> str:
        if self.kind == 'elliptic':
            return f"elliptic(tau={self.tau.tau})"
        return self.kind

    def value(self, z):
        """S(z)"""
        z_arr = np.asarray(z, dtype=complex)
        if self.kind == 'polylog':
            values = -2.0j * np.sin(0.5 * z_arr) * np.exp(0.5j * z_arr)
        elif self.kind == 'circular':
            values = 2.0 * np.sin(np.pi * z_arr)
        else:
            values = theta1_normalized(z_arr, self.tau, self.theta_settings)
        return _finish(values, z)

    def ratio(self, z):
        """S(z)/z, equal to S'(0) at z = 0"""
        z_arr = np.asarray(z, dtype=complex)
        if self.kind == 'polylog':
            values = -1j * np.exp(0.5j * z_arr) * np.sinc(z_arr / (2.0 * np.pi))
        elif self.kind == 'circular':
            values = 2.0 * np.pi * np.sinc(z_arr)
        else:
            values = theta1_over_z(z_arr, self.tau, self.theta_settings)
        return _finish(values, z)

    def log_derivative(self, z):
        """S'(z)/S(z) in closed form"""
        z_arr = np.asarray(z, dtype=complex)
        self.check_clear(z_arr)
        if self.kind == 'polylog':
            values = 0.5 / np.tan(0.5 * z_arr) + 0.5j
        elif self.kind == 'circular':
            values = np.pi / np.tan(np.pi * z_arr)
        else:
            values = theta1_log_derivative(z_arr, self.tau, self.theta_settings)
        return _finish(values, z)

    def zero_distance(self, z):
        """Distance from z to the zero set of S"""
        z_arr = np.asarray(z, dtype=complex)
        if self.kind == 'elliptic':
            return lattice_distance(z_arr, self.tau)
        p = self.period
        return np.abs(z_arr - p * np.round(z_arr.real / p))

    def zeros_near(self, path: PathSpec) -> np.ndarray:
        """Zeros of S near the path (bounding box enlarged by one period)"""
        if self.kind == 'elliptic':
            return lattice_points_near(path, self.tau)
        p = self.period
        re = np.asarray(path.waypoints).real
        return p * np.arange(math.floor(re.min() / p) - 1, math.ceil(re.max() / p) + 2) + 0j

    def clearance(self, path: PathSpec, skip_origin: bool = False) -> float:
        """
        Smallest distance from the path to a zero of S

        With skip_origin, the zero at 0 is ignored on segments that start or
        end there.
        """
        zeros = self.zeros_near(path)
        distances = []
        for a, b in zip(path.waypoints, path.waypoints[1:]):
            candidates = zeros
            if skip_origin and (a == 0 or b == 0):
                candidates = zeros[zeros != 0]
            distances.append(segment_point_distance(a, b, candidates))
        return min(distances)

    def check_clear(self, z, zero_guard: Optional[float] = None) -> None:
        zero_guard = settings.ZERO_GUARD if zero_guard is None else zero_guard
        distance = float(np.min(np.atleast_1d(self.zero_distance(z))))
        if distance <= zero_guard:
            raise NearZeroError(
                f"{self.describe()} seed evaluated within {distance:.3g} of a zero (zero_guard={zero_guard:g})"
            )

    def log_ratio_real(self, x: np.ndarray, reference: float) -> np.ndarray:
        """
        R₁(x) = log(S(x)/x) on real points of [0, period), continuous in x

        The branch is the principal one at `reference`. For the elliptic
        seed the argument is continued through neighbouring points with
        increments below the phase step bound, bisecting wider gaps.
        """
        x = np.asarray(x, dtype=float)
        if np.any(x < 0.0) or np.any(x >= self.period):
            raise DomainError(f"real seed points must lie in [0, {self.period:g})")
        if self.kind == 'polylog':
            return 1j * (0.5 * x - 0.5 * np.pi) + np.log(np.sinc(x / (2.0 * np.pi)))
        if self.kind == 'circular':
            return np.log(2.0 * np.pi * np.sinc(x)) + 0j

        order = np.argsort(x)
        points = np.concatenate(([reference], x[order]))
        values = np.asarray(theta1_over_z(points, self.tau, self.theta_settings))
        args = np.angle(values)
        anchor_arg = args[0]
        grid, grid_args = points[1:], args[1:]

        steps = wrap_phase(np.diff(grid_args))
        wide = np.flatnonzero(np.abs(steps) >= settings.PHASE_MAX_STEP)
        for i in wide:
            path = PathSpec.segment(grid[i], grid[i + 1], samples_hint=8)
            steps[i] = track_argument(lambda z: theta1_over_z(z, self.tau, self.theta_settings), path)[2][-1] \
                - np.angle(theta1_over_z(grid[i], self.tau, self.theta_settings))
        unwrapped = grid_args[0] + np.concatenate(([0.0], np.cumsum(steps)))

        # shift so the point nearest the reference agrees with the principal value there
        nearest = int(np.argmin(np.abs(grid - reference)))
        link = wrap_phase(anchor_arg - grid_args[nearest])
        if abs(link) >= settings.PHASE_MAX_STEP:
            path = PathSpec.segment(grid[nearest], reference, samples_hint=8)
            link = track_argument(lambda z: theta1_over_z(z, self.tau, self.theta_settings), path)[2][-1] \
                - np.angle(theta1_over_z(grid[nearest], self.tau, self.theta_settings))
        unwrapped = unwrapped + (anchor_arg - link) - unwrapped[nearest]

        result = np.empty(len(x), dtype=complex)
        result[order] = np.log(np.abs(values[1:])) + 1j * unwrapped
        return result


def seed_log(seed: Seed, z, reference: Optional[float] = None,
             zero_guard: Optional[float] = None):
    """
    log S_⋆(z) on the branch continued from the principal value at `reference`

    Args:
        seed: Seed function
        z: Complex point (or array of points)
        reference: Real anchor point, by default the midpoint of the seed's
            default domain

    Returns:
        log S_⋆(z); on the positive real axis this equals log z + R₁(z)

    Raises:
        NearZeroError: if z is within zero_guard of a zero of S
        BranchError: if the continuation cannot keep increments below π/2
    """
    if reference is None:
        reference = 0.5 * sum(seed.default_domain())
    seed.check_clear(reference, zero_guard)
    z_arr = np.atleast_1d(np.asarray(z, dtype=complex))
    seed.check_clear(z_arr, zero_guard)

    anchor_arg = float(np.angle(seed.value(reference)))
    result = np.empty(z_arr.shape, dtype=complex)
    for i, point in enumerate(z_arr):
        if point == reference:
            arg = anchor_arg
        else:
            path = PathSpec.segment(reference, point, samples_hint=32)
            if seed.clearance(path) <= (settings.ZERO_GUARD if zero_guard is None else zero_guard):
                raise NearZeroError(f"segment from {reference} to {point} passes through a zero of the seed")
            arg = float(track_argument(seed.value, path)[2][-1])
        result[i] = np.log(np.abs(seed.value(point))) + 1j * arg
    if np.ndim(z) == 0:
        return complex(result[0])
    return result
