"""
Phase of the normalized theta function: unwrapped argument profiles,
SL-type seeds, nodal jumps and lattice winding numbers
"""
import logging
import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from scipy.integrate import quad

from config import settings
from src.phase.paths import PathSpec
from src.phase.tracking import lattice_points_near, path_clearance, track_argument
from src.theta.jacobi import TauParameter, ThetaSettings, theta1_normalized, theta1_over_z
from src.utils.errors import DomainError, NearZeroError, QuadratureError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PhaseProfile:
    """Branch-continuous argument of θ̃₁(·|τ) sampled along a path"""

    tau: TauParameter
    path: PathSpec
    parameters: np.ndarray
    positions: np.ndarray
    unwrapped_arg: np.ndarray
    max_step_phase: float
    refined: bool
    theta_settings: Optional[ThetaSettings] = None

    @property
    def samples(self):
        """List of (position, unwrapped_arg) pairs in path order"""
        return list(zip(self.positions.tolist(), self.unwrapped_arg.tolist()))

    @property
    def total_increment(self) -> float:
        return float(self.unwrapped_arg[-1] - self.unwrapped_arg[0])

    def arg_at(self, s):
        """
        Argument on this profile's branch at arclength s

        The principal argument at γ(s) is shifted by the multiple of 2π that
        brings it closest to the interpolated profile.
        """
        s_arr = np.asarray(s, dtype=float)
        principal = np.angle(theta1_normalized(self.path.point_at(s_arr), self.tau, self.theta_settings))
        guide = np.interp(s_arr, self.parameters, self.unwrapped_arg)
        values = principal + 2.0 * np.pi * np.round((guide - principal) / (2.0 * np.pi))
        if np.ndim(s) == 0:
            return float(values)
        return values


def unwrap_phase(tau: TauParameter, path: PathSpec,
                 theta_settings: Optional[ThetaSettings] = None,
                 zero_guard: Optional[float] = None,
                 max_step: Optional[float] = None,
                 max_depth: Optional[int] = None) -> PhaseProfile:
    """
    Unwrapped argument of θ̃₁(z|τ) along a path avoiding the zero lattice

    Args:
        tau: Half-period ratio
        path: Polyline path
        theta_settings: Truncation control for θ₁
        zero_guard: Smallest admissible distance to a lattice zero
        max_step: Largest accepted increment between samples (default π/2)
        max_depth: Bisection depth limit (default 40)

    Returns:
        PhaseProfile anchored at the principal argument of the first sample

    Raises:
        NearZeroError: if the path passes within zero_guard of a zero
        BranchError: if refinement exceeds max_depth
    """
    zero_guard = settings.ZERO_GUARD if zero_guard is None else zero_guard
    clearance = path_clearance(path, tau)
    if clearance <= zero_guard:
        raise NearZeroError(f"path passes within {clearance:.3g} of a zero of theta1 (zero_guard={zero_guard:g})")

    def normalized(z):
        return theta1_normalized(z, tau, theta_settings)

    parameters, positions, unwrapped, max_step_phase, refined = track_argument(
        normalized, path, max_step, max_depth
    )
    return PhaseProfile(
        tau=tau,
        path=path,
        parameters=parameters,
        positions=positions,
        unwrapped_arg=unwrapped,
        max_step_phase=max_step_phase,
        refined=refined,
        theta_settings=theta_settings,
    )


def phase_increment(tau: TauParameter, path: PathSpec, **kwargs) -> float:
    """Total change of the continuous argument of θ̃₁ along the path"""
    return unwrap_phase(tau, path, **kwargs).total_increment


def _check_unit_interval(x: np.ndarray, zero_guard: float) -> None:
    if np.any(x <= zero_guard) or np.any(x >= 1.0 - zero_guard):
        raise DomainError(f"x must lie in ({zero_guard:g}, {1.0 - zero_guard:g})")


def sl_seed(tau: TauParameter, x: Union[float, np.ndarray],
            theta_settings: Optional[ThetaSettings] = None,
            zero_guard: Optional[float] = None) -> Union[float, np.ndarray]:
    """
    SL-type seed B^ell(1;x;τ) = -2 Arg θ̃₁(x|τ) on (0, 1)

    The branch is anchored at the principal argument at x = 1/2 and
    continued along the real axis.
    """
    zero_guard = settings.ZERO_GUARD if zero_guard is None else zero_guard
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    _check_unit_interval(x_arr, zero_guard)
    args = np.empty_like(x_arr)
    anchor = 0.5
    at_anchor = x_arr == anchor
    if np.any(at_anchor):
        args[at_anchor] = np.angle(theta1_normalized(anchor, tau, theta_settings))
    for side in (x_arr < anchor, x_arr > anchor):
        if not np.any(side):
            continue
        far = x_arr[side].min() if x_arr[side].min() < anchor else x_arr[side].max()
        profile = unwrap_phase(tau, PathSpec.segment(anchor, far), theta_settings, zero_guard)
        args[side] = profile.arg_at(np.abs(x_arr[side] - anchor))
    values = -2.0 * args
    if np.ndim(x) == 0:
        return float(values[0])
    return values


def sl_order2(tau: TauParameter, x: float, tol: Optional[float] = None,
              theta_settings: Optional[ThetaSettings] = None,
              zero_guard: Optional[float] = None) -> float:
    """
    B^ell(2;x;τ) = -2 ∫_0^x Arg θ̃₁(t|τ) dt by adaptive quadrature of the phase

    Near t = 0 the argument is taken from θ̃₁(t)/t, which tends to 1.

    Raises:
        QuadratureError: if the quadrature error estimate exceeds tol
    """
    tol = settings.QUAD_TOL if tol is None else tol
    zero_guard = settings.ZERO_GUARD if zero_guard is None else zero_guard
    margin = settings.TOWER_MARGIN
    if not 0.0 < x < 1.0 - margin:
        raise DomainError(f"x={x:g} must lie in (0, {1.0 - margin:g})")

    start = 10.0 * zero_guard

    def near_origin(t):
        return float(np.angle(theta1_over_z(t, tau, theta_settings)))

    if x <= start:
        integrand = near_origin
    else:
        profile = unwrap_phase(tau, PathSpec.segment(start, x), theta_settings, zero_guard)

        def integrand(t):
            if t < start:
                return near_origin(t)
            return profile.arg_at(t - start)

    result = quad(integrand, 0.0, x, epsabs=tol, epsrel=0.0, limit=200, full_output=1)
    value, abserr, info = result[:3]
    if len(result) == 4 and abserr > tol:
        raise QuadratureError(f"phase quadrature error {abserr:.3g} exceeds tol={tol:g} at x={x:g}")
    logger.debug("sl_order2 at x=%g used %d evaluations", x, info['neval'])
    return -2.0 * value


def nodal_jump(tau: TauParameter, crossing: float, offset: float, half_width: float = 0.1,
               theta_settings: Optional[ThetaSettings] = None,
               zero_guard: Optional[float] = None) -> float:
    """
    Phase increment across the real point `crossing` along the segment
    from crossing - w + i·offset to crossing + w + i·offset

    Across a zero the magnitude tends to π as offset shrinks; across a
    regular point it stays at the size of the smooth phase variation.
    The signed value is returned.
    """
    zero_guard = settings.ZERO_GUARD if zero_guard is None else zero_guard
    if offset <= zero_guard:
        raise NearZeroError(f"offset={offset:g} must exceed zero_guard={zero_guard:g}")
    if half_width <= offset:
        raise DomainError(f"half_width={half_width:g} must exceed offset={offset:g}")
    height = 1j * offset
    path = PathSpec.segment(crossing - half_width + height, crossing + half_width + height)
    return unwrap_phase(tau, path, theta_settings, zero_guard).total_increment


def winding_number(tau: TauParameter, center: complex, radius: float, vertices: int = 64,
                   theta_settings: Optional[ThetaSettings] = None,
                   zero_guard: Optional[float] = None) -> int:
    """
    Number of zeros of θ̃₁ enclosed by the circle, from the total phase increment

    Raises:
        DomainError: if the radius is not in (10·zero_guard, d/2) with d the
            distance from the center to the nearest other lattice point
    """
    zero_guard = settings.ZERO_GUARD if zero_guard is None else zero_guard
    path = PathSpec.circle(center, radius, vertices)
    distances = np.abs(lattice_points_near(path, tau) - complex(center))
    others = distances[distances > 1e-9 * (1.0 + abs(center))]
    limit = 0.5 * float(others.min())
    if not 10.0 * zero_guard < radius < limit:
        raise DomainError(f"radius={radius:g} must lie in ({10.0 * zero_guard:g}, {limit:g})")
    increment = unwrap_phase(tau, path, theta_settings, zero_guard).total_increment
    turns = increment / (2.0 * math.pi)
    logger.debug("winding around %s: increment %.12g", center, increment)
    return int(round(turns))
