"""
Iterated base-point integration towers F_{n+1}(z) = ∫_0^z F_n(w) dw

Every level is split as F_n = L_n + R_n. The singular part

    L_n(z) = z^{n-1}/(n-1)! · (log z - H_{n-1})

is the exact iterated integral of log z, and the analytic remainder R_n
is held as a Chebyshev series on [0, x_hi] so that integration is exact on
the representation.
"""
import json
import logging
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import Chebyshev
from scipy.fft import dct
from scipy.special import xlogy

from config import settings
from src.circular.polylog import circular_master, harmonic_number, i_power, zeta_value
from src.hierarchy.seeds import Seed
from src.theta.jacobi import TauParameter, ThetaSettings
from src.utils.errors import DomainError, ResolutionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Tower:
    """Levels F_1..F_N of one seed on the real domain [x_lo, x_hi]"""

    seed: Seed
    max_order: int
    domain: Tuple[float, float]
    coefficients: Tuple[np.ndarray, ...]
    interpolation_error: float
    nodes: int

    @property
    def analytic_parts(self) -> Tuple[Chebyshev, ...]:
        """R_1..R_N as Chebyshev series on [0, x_hi]"""
        window = [0.0, self.domain[1]]
        return tuple(Chebyshev(c, domain=window) for c in self.coefficients)

    def to_json(self) -> str:
        tau = self.seed.tau
        theta_settings = self.seed.theta_settings
        payload = {
            'seed': {
                'kind': self.seed.kind,
                'tau': None if tau is None else [tau.tau.real, tau.tau.imag],
                'tau_min': None if tau is None else tau.tau_min,
                'theta_settings': None if theta_settings is None else theta_settings.model_dump(),
            },
            'max_order': self.max_order,
            'domain': list(self.domain),
            'nodes': self.nodes,
            'interpolation_error': self.interpolation_error,
            'coefficients': [
                {'re': c.real.tolist(), 'im': c.imag.tolist()} for c in self.coefficients
            ],
        }
        return json.dumps(payload, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "Tower":
        payload = json.loads(text)
        seed_data = payload['seed']
        if seed_data['kind'] == 'elliptic':
            tau = TauParameter(complex(*seed_data['tau']), seed_data['tau_min'])
            stored = seed_data.get('theta_settings')
            seed = Seed.elliptic(tau, None if stored is None else ThetaSettings(**stored))
        else:
            seed = Seed(seed_data['kind'])
        max_order = int(payload['max_order'])
        coefficients = tuple(
            np.asarray(c['re'], dtype=float) + 1j * np.asarray(c['im'], dtype=float)
            for c in payload['coefficients']
        )
        if len(coefficients) != max_order:
            raise DomainError(f"tower file holds {len(coefficients)} levels, expected {max_order}")
        return cls(
            seed=seed,
            max_order=max_order,
            domain=tuple(payload['domain']),
            coefficients=coefficients,
            interpolation_error=float(payload['interpolation_error']),
            nodes=int(payload['nodes']),
        )


def extrema_nodes(x_hi: float, count: int) -> np.ndarray:
    """Chebyshev extrema x_hi/2·(1 + cos(πj/count)), j = 0..count, mapped to [0, x_hi]"""
    return 0.5 * x_hi * (1.0 + np.cos(np.pi * np.arange(count + 1) / count))


def chebyshev_coefficients(values: np.ndarray) -> np.ndarray:
    """Coefficients of the degree-M interpolant through values at the M+1 extrema nodes"""
    m = len(values) - 1

    def transform(part):
        c = dct(part, type=1) / m
        c[0] *= 0.5
        c[-1] *= 0.5
        return c

    return transform(values.real) + 1j * transform(values.imag)


def singular_part(n: int, z) -> np.ndarray:
    """L_n(z) = (z^{n-1} log z - H_{n-1} z^{n-1}) / (n-1)!, with L_n(0) = 0 for n >= 2"""
    z = np.asarray(z, dtype=float)
    power = z ** (n - 1)
    return (xlogy(power, z) - harmonic_number(n - 1) * power) / math.factorial(n - 1)


def _check_domain(seed: Seed, domain: Tuple[float, float], margin: float) -> Tuple[float, float]:
    x_lo, x_hi = (float(v) for v in domain)
    limit = seed.period - margin
    if not 0.0 <= x_lo < x_hi <= limit + 1e-15:
        raise DomainError(f"domain [{x_lo:g}, {x_hi:g}] must satisfy 0 <= x_lo < x_hi <= {limit:g}")
    return x_lo, x_hi


def build_tower(seed: Seed, N: int, domain: Optional[Tuple[float, float]] = None,
                resolution: Optional[int] = None, max_nodes: Optional[int] = None,
                interp_tol: Optional[float] = None) -> Tower:
    """
    Build F_1..F_N for a seed on a real domain

    Args:
        seed: Seed function S_⋆
        N: Highest order, at least 2
        domain: Interval [x_lo, x_hi] inside [0, period - margin]; defaults
            to the seed's full default domain
        resolution: Initial interpolation degree, at least 16
        max_nodes: Degree cap of the adaptive doubling
        interp_tol: Relative interpolation tolerance for R_1

    Returns:
        Tower whose R_1 matches log(S(x)/x) to interp_tol at the check nodes

    Raises:
        DomainError: for invalid orders, domains or resolutions
        BranchError: if the branch of R_1 cannot be continued
        ResolutionError: if max_nodes is reached before interp_tol
    """
    resolution = settings.TOWER_RESOLUTION if resolution is None else resolution
    max_nodes = settings.TOWER_MAX_NODES if max_nodes is None else max_nodes
    interp_tol = settings.TOWER_INTERP_TOL if interp_tol is None else interp_tol
    margin = settings.TOWER_MARGIN

    if int(N) != N or N < 2:
        raise DomainError(f"tower order N must be an integer >= 2, got {N}")
    if resolution < 16:
        raise DomainError(f"resolution must be >= 16, got {resolution}")
    if margin < 0.01:
        raise DomainError(f"TOWER_MARGIN must be >= 0.01, got {margin:g}")
    domain = seed.default_domain(margin) if domain is None else domain
    x_lo, x_hi = _check_domain(seed, domain, margin)
    reference = 0.5 * (x_lo + x_hi)

    m = int(resolution)
    while True:
        if 2 * m > max_nodes:
            raise ResolutionError(
                f"{seed.describe()} remainder not resolved to {interp_tol:g} with {max_nodes} nodes"
            )
        fine = extrema_nodes(x_hi, 2 * m)
        values = seed.log_ratio_real(fine, reference)
        coarse = Chebyshev(chebyshev_coefficients(values[::2]), domain=[0.0, x_hi])
        error = float(np.max(np.abs(coarse(fine[1::2]) - values[1::2])))
        scale = max(1.0, float(np.max(np.abs(values))))
        logger.debug("%s: %d nodes, interpolation error %.3g", seed.describe(), m, error)
        if error <= interp_tol * scale:
            break
        m *= 2

    level = Chebyshev(chebyshev_coefficients(values), domain=[0.0, x_hi])
    levels = [level]
    for _ in range(1, N):
        level = level.integ(lbnd=0.0)
        levels.append(level)

    logger.info("Built %s tower: N=%d, domain=[%g, %g], %d nodes", seed.describe(), N, x_lo, x_hi, 2 * m)
    return Tower(
        seed=seed,
        max_order=int(N),
        domain=(x_lo, x_hi),
        coefficients=tuple(np.asarray(p.coef, dtype=complex) for p in levels),
        interpolation_error=error,
        nodes=2 * m,
    )


def eval_tower(tower: Tower, n: int, z):
    """
    F_n(z) = L_n(z) + R_n(z) at real points of the tower's domain

    z = 0 is admitted for n >= 2, where F_n(0) = 0.
    """
    if int(n) != n or not 1 <= n <= tower.max_order:
        raise DomainError(f"order n={n} outside 1..{tower.max_order}")
    z_arr = np.asarray(z, dtype=float)
    x_lo, x_hi = tower.domain
    slack = 1e-12 * max(1.0, x_hi)
    if np.any(z_arr < x_lo - slack) or np.any(z_arr > x_hi + slack):
        raise DomainError(f"z outside the tower domain [{x_lo:g}, {x_hi:g}]")
    if n == 1 and np.any(z_arr <= 0.0):
        raise DomainError("F_1 = log S is singular at z = 0")
    remainder = Chebyshev(tower.coefficients[n - 1], domain=[0.0, x_hi])
    values = singular_part(n, z_arr) + remainder(z_arr)
    if np.ndim(z) == 0:
        return complex(values)
    return values


def cl_tower(tower: Tower, n: int, z):
    """CL-type projection A(n;z) = 2 Re F_n(z)"""
    return 2.0 * np.real(eval_tower(tower, n, z))


def sl_tower(tower: Tower, n: int, z):
    """SL-type projection B(n;z) = -2 Im F_n(z)"""
    return -2.0 * np.imag(eval_tower(tower, n, z))


def tower_to_circular_shift(n: int, z, constant: float = math.log(2.0 * math.pi)):
    """
    Additive change of F_n when the seed is divided by exp(constant)

    Dividing 2 sin(πx) by 2π gives the trigonometric limit sin(πx)/π of
    the normalized theta seed; every level then moves by
    -constant·z^{n-1}/(n-1)!.
    """
    return constant * np.asarray(z, dtype=float) ** (n - 1) / math.factorial(n - 1)


def polylog_to_circular_shift(n: int, x):
    """
    P_n(2πx)/(2π)^{n-1} - C_n(x) for the polylog tower P and the circular tower C

    On (0, 1) the seeds satisfy log(1 - e^{2πix}) = log(2 sin πx) + iπ(x - 1/2),
    and integrating the affine phase n-1 times from 0 gives
    iπ(x^n/n! - x^{n-1}/(2(n-1)!)).
    """
    if int(n) != n or n < 1:
        raise DomainError(f"order n={n} must be a positive integer")
    x = np.asarray(x, dtype=float)
    return 1j * math.pi * (x ** n / math.factorial(n) - 0.5 * x ** (n - 1) / math.factorial(n - 1))


def polylog_tower_at_circular_scale(tower: Tower, n: int, x):
    """The polylog tower at θ = 2πx rescaled to the circular variable, P_n(2πx)/(2π)^{n-1}"""
    if tower.seed.kind != 'polylog':
        raise DomainError(f"expected a polylog tower, got {tower.seed.kind}")
    return eval_tower(tower, n, 2.0 * math.pi * np.asarray(x, dtype=float)) / (2.0 * math.pi) ** (n - 1)


def reconcile_polylog_tower(tower: Tower, N: int, theta_grid: Sequence[float],
                            drop_constants: Iterable[int] = ()) -> float:
    """
    Largest discrepancy between i^{-n}Li_n(e^{iθ}) and the base-point tower

    The tower of log(1 - e^{iθ}) is turned into G_n = i·T_n and completed
    with the boundary terms Σ_{k=2}^n c_k θ^{n-k}/(n-k)!, c_k = i^{-k}ζ(k).

    Args:
        tower: Tower built from the polylog seed (θ is its variable)
        N: Highest order compared, 1 <= N <= tower.max_order
        theta_grid: Angles inside the tower domain, strictly positive
        drop_constants: Orders k whose constant c_k is omitted (negative control)

    Returns:
        max over orders and grid of |F_n(θ) - G_n(θ) - boundary terms|
    """
    if tower.seed.kind != 'polylog':
        raise DomainError(f"reconciliation needs the polylog seed, got {tower.seed.describe()}")
    if int(N) != N or not 1 <= N <= tower.max_order:
        raise DomainError(f"N={N} outside 1..{tower.max_order}")
    theta = np.asarray(theta_grid, dtype=float)
    if theta.size == 0 or np.any(theta <= 0.0):
        raise DomainError("theta grid must be non-empty and strictly positive")
    dropped = set(drop_constants)
    constants = {k: (0.0 if k in dropped else i_power(-k) * zeta_value(k)) for k in range(2, N + 1)}

    worst = 0.0
    for n in range(1, N + 1):
        expected = circular_master(n, theta)
        candidate = 1j * eval_tower(tower, n, theta)
        for k in range(2, n + 1):
            candidate = candidate + constants[k] * theta ** (n - k) / math.factorial(n - k)
        discrepancy = float(np.max(np.abs(expected - candidate)))
        logger.debug("reconciliation order %d: %.3g", n, discrepancy)
        worst = max(worst, discrepancy)
    return worst
