"""
Circular regime: polylogarithms on the unit circle and the phase-normalized
master F_n(θ) = i^{-n} Li_n(e^{iθ}) with its CL/SL components
"""
import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Tuple, Union

import numpy as np
from scipy.special import bernoulli

from config import settings
from src.utils.errors import DomainError, TruncationError

logger = logging.getLogger(__name__)

RealLike = Union[float, np.ndarray]
ComplexLike = Union[complex, np.ndarray]

# Euler–Maclaurin parameters for the θ = 0 series
_EM_CUTOFF = 16
_EM_ORDER = 8
_EXPANSION_MAX_TERMS = 400


def i_power(exponent: int) -> complex:
    """i**exponent without rounding, for any integer exponent"""
    return (1.0 + 0.0j, 1.0j, -1.0 + 0.0j, -1.0j)[exponent % 4]


@lru_cache(maxsize=None)
def harmonic_number(m: int) -> float:
    """H_m = sum_{k<=m} 1/k with H_0 = 0"""
    if m < 0:
        raise DomainError(f"harmonic number needs m >= 0, got {m}")
    return math.fsum(1.0 / k for k in range(1, m + 1))


@lru_cache(maxsize=None)
def zeta_value(n: int) -> float:
    """
    ζ(n) for integer n >= 2 from the θ = 0 series Σ 1/k^n

    The first K-1 terms are summed exactly-rounded, the tail uses the
    Euler–Maclaurin formula with Bernoulli corrections.
    """
    if n < 2:
        raise DomainError(f"zeta_value needs n >= 2, got {n}")
    K = _EM_CUTOFF
    head = math.fsum(k ** -float(n) for k in range(1, K))
    b = bernoulli(2 * _EM_ORDER)
    corrections = [K ** (1.0 - n) / (n - 1.0), 0.5 * K ** -float(n)]
    rising = float(n)  # n (n+1) ... (n+2j-2)
    for j in range(1, _EM_ORDER + 1):
        corrections.append(b[2 * j] / math.factorial(2 * j) * rising * K ** (-n - 2.0 * j + 1.0))
        rising *= (n + 2 * j - 1) * (n + 2 * j)
    return math.fsum([head] + corrections)


def _zeta_nonpositive(j: int) -> float:
    """ζ(-j) for j >= 0, via the reflection ζ(1-2m) = (-1)^m 2 (2m-1)! ζ(2m)/(2π)^{2m}"""
    if j == 0:
        return -0.5
    if j % 2 == 0:
        return 0.0
    m = (j + 1) // 2
    return (-1) ** m * 2.0 * math.factorial(2 * m - 1) * zeta_value(2 * m) / (2.0 * math.pi) ** (2 * m)


def _reduce_angle(theta: np.ndarray) -> np.ndarray:
    """θ reduced to [-π, π]"""
    return theta - 2.0 * np.pi * np.round(theta / (2.0 * np.pi))


def _check_order(n: int) -> None:
    if int(n) != n or n < 1:
        raise DomainError(f"polylog order must be a positive integer, got {n}")


def _log_one_minus_exp(theta: np.ndarray, theta_guard: float) -> np.ndarray:
    """Principal log(1 - e^{iθ}) from 1 - e^{iθ} = -2i sin(θ/2) e^{iθ/2}"""
    if np.any(np.abs(_reduce_angle(theta)) <= theta_guard):
        raise DomainError(f"log(1 - e^(i theta)) is singular within theta_guard={theta_guard:g} of 2*pi*Z")
    return np.log(-2.0j * np.sin(0.5 * theta) * np.exp(0.5j * theta))


def _expansion(n: int, r: np.ndarray, tol: float) -> np.ndarray:
    """
    Li_n(e^{ir}) for |r| <= π, n >= 2, from the expansion about r = 0

        (ir)^{n-1}/(n-1)! (H_{n-1} - log(-ir)) + Σ_{k != n-1} ζ(n-k) (ir)^k / k!
    """
    safe = np.where(r == 0.0, 1.0, r)
    singular = (1j * r) ** (n - 1) / math.factorial(n - 1) * (harmonic_number(n - 1) - np.log(-1j * safe))
    singular = np.where(r == 0.0, 0.0, singular)
    total = singular.astype(complex)
    ratio = float(np.max(np.abs(r))) / (2.0 * math.pi) if r.size else 0.0
    power = np.ones_like(r, dtype=complex)  # (ir)^k / k!
    for k in range(_EXPANSION_MAX_TERMS):
        if k > 0:
            power = power * (1j * r) / k
        if k != n - 1:
            zeta = zeta_value(n - k) if k < n - 1 else _zeta_nonpositive(k - n)
            if zeta != 0.0:
                total = total + zeta * power
        # |ζ(n-k) (ir)^k/k!| <= 4 (2π)^{n-1} (|r|/2π)^k once k > n
        if k > n and 4.0 * (2.0 * math.pi) ** (n - 1) * ratio ** (k + 1) / (1.0 - ratio) < tol:
            logger.debug("polylog expansion n=%d converged after %d terms", n, k + 1)
            return total
    raise TruncationError(f"polylog expansion for n={n} did not reach tol={tol:g}")


def polylog_unit_circle(n: int, theta: RealLike, tol: Optional[float] = None,
                        theta_guard: Optional[float] = None) -> ComplexLike:
    """
    Li_n(e^{iθ}) = Σ e^{ikθ}/k^n on the unit circle

    Args:
        n: Positive order
        theta: Angle or array of angles
        tol: Absolute truncation tolerance for n >= 2
        theta_guard: Excluded neighbourhood of 2πℤ for n = 1

    Returns:
        Li_n(e^{iθ}), same shape as theta

    Raises:
        DomainError: n = 1 at the logarithmic singularity
    """
    _check_order(n)
    tol = settings.POLYLOG_TOL if tol is None else tol
    theta_guard = settings.THETA_GUARD if theta_guard is None else theta_guard
    theta_arr = np.asarray(theta, dtype=float)
    if n == 1:
        values = -_log_one_minus_exp(theta_arr, theta_guard)
    else:
        values = _expansion(int(n), _reduce_angle(theta_arr), tol)
    if np.ndim(theta) == 0:
        return complex(values)
    return values


def polylog_partial_sum(n: int, theta: float, terms: int) -> Tuple[complex, float]:
    """
    Plain partial sum Σ_{k<=terms} e^{ikθ}/k^n with its integral tail bound

    Returns:
        Tuple of (partial_sum, tail_bound) with tail_bound = terms^{1-n}/(n-1)
        (infinite for n = 1, where only oscillation makes the series converge)
    """
    _check_order(n)
    k = np.arange(1, terms + 1, dtype=float)
    summands = np.exp(1j * theta * k) / k ** n
    value = complex(math.fsum(summands.real), math.fsum(summands.imag))
    tail = math.inf if n == 1 else terms ** (1.0 - n) / (n - 1.0)
    return value, tail


def circular_master(n: int, theta: RealLike, tol: Optional[float] = None) -> ComplexLike:
    """Phase-normalized master F_n(θ) = i^{-n} Li_n(e^{iθ})"""
    return i_power(-n) * polylog_unit_circle(n, theta, tol)


def cl_component(n: int, theta: RealLike, tol: Optional[float] = None) -> RealLike:
    """CL-type component A(n;θ) = 2 Re F_n(θ)"""
    return 2.0 * np.real(circular_master(n, theta, tol))


def sl_component(n: int, theta: RealLike, tol: Optional[float] = None) -> RealLike:
    """SL-type component B(n;θ) = -2 Im F_n(θ)"""
    return -2.0 * np.imag(circular_master(n, theta, tol))


def cosine_series(n: int, theta: RealLike, tol: Optional[float] = None) -> RealLike:
    """Σ cos(kθ)/k^n = Re Li_n(e^{iθ})"""
    return np.real(polylog_unit_circle(n, theta, tol))


def sine_series(n: int, theta: RealLike, tol: Optional[float] = None) -> RealLike:
    """Σ sin(kθ)/k^n = Im Li_n(e^{iθ})"""
    return np.imag(polylog_unit_circle(n, theta, tol))


def clausen_cl2(theta: RealLike, tol: Optional[float] = None) -> RealLike:
    """Clausen function Cl₂(θ) = Σ sin(kθ)/k²"""
    return sine_series(2, theta, tol)


@dataclass(frozen=True)
class BoundaryConstants:
    """Values 𝒞_n = A(n;0) and 𝒮_n = B(n;0) of the CL/SL components at the base point"""

    n: int
    C_n: float
    S_n: float

    @property
    def master_value(self) -> complex:
        """F_n(0) = 𝒞_n/2 - i 𝒮_n/2"""
        return complex(0.5 * self.C_n, -0.5 * self.S_n)


def boundary_constants(n: int, tol: Optional[float] = None) -> BoundaryConstants:
    """
    Boundary constants of order n >= 2 from F_n(0) = i^{-n} ζ(n)

    Args:
        n: Order, at least 2 (F_1 is singular at θ = 0)

    Returns:
        BoundaryConstants with C_n = 2 Re(i^{-n}ζ(n)), S_n = -2 Im(i^{-n}ζ(n))
    """
    if int(n) != n or n < 2:
        raise DomainError(f"boundary constants need n >= 2, got {n}")
    value = i_power(-n) * polylog_unit_circle(n, 0.0, tol)
    return BoundaryConstants(n=int(n), C_n=2.0 * value.real, S_n=-2.0 * value.imag)
