"""
Jacobi theta function θ₁(z|τ) with period 1 in z and nome q = exp(iπτ)

Two independent evaluation paths are provided (sine q-series and infinite
product) so that each serves as the other's oracle.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from config import settings
from src.utils.errors import DomainError, NearZeroError, TruncationError

logger = logging.getLogger(__name__)

ComplexLike = Union[complex, float, np.ndarray]


class ThetaSettings(BaseModel):
    """Series truncation control"""

    model_config = ConfigDict(frozen=True)

    truncation_eps: float = Field(default=settings.THETA_TRUNCATION_EPS, gt=0)
    max_terms: int = Field(default=settings.THETA_MAX_TERMS, ge=4)


DEFAULT_SETTINGS = ThetaSettings()


@dataclass(frozen=True)
class TauParameter:
    """A point τ in the upper half-plane together with its nome q = exp(iπτ)"""

    tau: complex
    tau_min: float = settings.TAU_MIN
    q: complex = field(init=False, repr=False)
    q_abs: float = field(init=False, repr=False)

    def __post_init__(self):
        tau = complex(self.tau)
        if not math.isfinite(tau.real) or not math.isfinite(tau.imag):
            raise DomainError(f"tau={tau} is not finite")
        if tau.imag < self.tau_min:
            raise DomainError(
                f"Im(tau)={tau.imag:g} below tau_min={self.tau_min:g}; "
                "modular transformations are not supported"
            )
        q = complex(np.exp(1j * np.pi * tau))
        object.__setattr__(self, 'tau', tau)
        object.__setattr__(self, 'q', q)
        object.__setattr__(self, 'q_abs', abs(q))

    @classmethod
    def from_parts(cls, tau_re: float, tau_im: float) -> "TauParameter":
        return cls(complex(tau_re, tau_im))

    @property
    def log_q_abs(self) -> float:
        """log|q| = -π Im τ, exact even where |q| underflows"""
        return -math.pi * self.tau.imag

    def nome_power(self, exponent):
        """q^exponent on the principal branch exp(iπτ·exponent)"""
        return np.exp(1j * np.pi * self.tau * np.asarray(exponent, dtype=float))


def _settings(theta_settings: Optional[ThetaSettings]) -> ThetaSettings:
    return theta_settings if theta_settings is not None else DEFAULT_SETTINGS


def _strip_height(z: np.ndarray, tau: TauParameter) -> float:
    y_max = float(np.max(np.abs(z.imag))) if z.size else 0.0
    if not math.isfinite(y_max):
        raise DomainError("z is not finite")
    if y_max > 2.0 * tau.tau.imag:
        raise DomainError(
            f"|Im z|={y_max:g} exceeds the strip bound 2*Im(tau)={2.0 * tau.tau.imag:g}"
        )
    return y_max


def _series_terms(tau: TauParameter, y_max: float, theta_settings: ThetaSettings, weight: int = 0) -> int:
    """
    Number of sine-series terms needed for the tail bound

    The bound for term n is |q|^{(n+1/2)^2} e^{(2n+1)π y_max} (2n+1)^weight.
    Terms are retained until the bound falls below truncation_eps times the
    largest retained bound on the decreasing side of the peak.

    Returns:
        Number of retained terms
    """
    log_eps = math.log(theta_settings.truncation_eps)
    largest = -math.inf
    previous = math.inf
    for n in range(theta_settings.max_terms):
        log_bound = (
            tau.log_q_abs * (n + 0.5) ** 2
            + (2 * n + 1) * math.pi * y_max
            + weight * math.log(2 * n + 1)
        )
        largest = max(largest, log_bound)
        if log_bound < previous and log_bound < largest + log_eps:
            return n + 1
        previous = log_bound
    raise TruncationError(
        f"theta series needs more than max_terms={theta_settings.max_terms} terms "
        f"for tau={tau.tau}, |Im z|<={y_max:g}"
    )


def _product_factors(tau: TauParameter, y_max: float, theta_settings: ThetaSettings) -> int:
    """Number of product factors m such that |q|^{2m}-corrections drop below truncation_eps"""
    log_eps = math.log(theta_settings.truncation_eps)
    log_scale = math.log(2.0 * math.cosh(2.0 * math.pi * y_max) + 2.0)
    for m in range(1, theta_settings.max_terms + 1):
        if 2 * m * tau.log_q_abs + log_scale < log_eps:
            return m
    raise TruncationError(
        f"theta product needs more than max_terms={theta_settings.max_terms} factors "
        f"for tau={tau.tau}; use the series path"
    )


def _finish(values: np.ndarray, z) -> ComplexLike:
    if np.ndim(z) == 0:
        return complex(values)
    return values


def _sine_series(z: np.ndarray, tau: TauParameter, terms: int, derivative: bool) -> np.ndarray:
    n = np.arange(terms)
    odd = 2 * n + 1
    coefficients = 2.0 * (-1.0) ** n * tau.nome_power((n + 0.5) ** 2)
    arguments = np.pi * np.multiply.outer(z, odd)
    if derivative:
        return np.sum(coefficients * np.pi * odd * np.cos(arguments), axis=-1)
    return np.sum(coefficients * np.sin(arguments), axis=-1)


def theta1_series(z: ComplexLike, tau: TauParameter,
                  theta_settings: Optional[ThetaSettings] = None) -> ComplexLike:
    """
    θ₁(z|τ) from the sine q-series 2Σ(-1)^n q^{(n+1/2)^2} sin((2n+1)πz)

    Args:
        z: Point or array of points in the strip |Im z| <= 2 Im τ
        tau: Half-period ratio
        theta_settings: Truncation control

    Returns:
        θ₁(z|τ), same shape as z
    """
    theta_settings = _settings(theta_settings)
    z_arr = np.asarray(z, dtype=complex)
    y_max = _strip_height(z_arr, tau)
    terms = _series_terms(tau, y_max, theta_settings)
    logger.debug("theta1 series: %d terms for tau=%s", terms, tau.tau)
    return _finish(_sine_series(z_arr, tau, terms, derivative=False), z)


def theta1_derivative(z: ComplexLike, tau: TauParameter,
                      theta_settings: Optional[ThetaSettings] = None) -> ComplexLike:
    """θ₁′(z|τ) from the term-wise differentiated sine series"""
    theta_settings = _settings(theta_settings)
    z_arr = np.asarray(z, dtype=complex)
    y_max = _strip_height(z_arr, tau)
    terms = _series_terms(tau, y_max, theta_settings, weight=1)
    return _finish(_sine_series(z_arr, tau, terms, derivative=True), z)


def theta1_product(z: ComplexLike, tau: TauParameter,
                   theta_settings: Optional[ThetaSettings] = None) -> ComplexLike:
    """
    θ₁(z|τ) from 2q^{1/4} sin(πz) Π(1-q^{2m})(1-2q^{2m}cos(2πz)+q^{4m})

    Args:
        z: Point or array of points in the strip |Im z| <= 2 Im τ
        tau: Half-period ratio
        theta_settings: Truncation control

    Returns:
        θ₁(z|τ), same shape as z
    """
    theta_settings = _settings(theta_settings)
    z_arr = np.asarray(z, dtype=complex)
    y_max = _strip_height(z_arr, tau)
    factors = _product_factors(tau, y_max, theta_settings)
    m = np.arange(1, factors + 1)
    q2m = tau.nome_power(2 * m)
    cos2 = np.cos(2.0 * np.pi * z_arr)[..., np.newaxis]
    product = np.prod((1.0 - q2m) * (1.0 - 2.0 * q2m * cos2 + q2m ** 2), axis=-1)
    values = 2.0 * tau.nome_power(0.25) * np.sin(np.pi * z_arr) * product
    logger.debug("theta1 product: %d factors for tau=%s", factors, tau.tau)
    return _finish(values, z)


def theta1_prime_zero(tau: TauParameter, theta_settings: Optional[ThetaSettings] = None,
                      method: str = "series") -> complex:
    """
    θ₁′(0|τ)

    Args:
        tau: Half-period ratio
        theta_settings: Truncation control
        method: "series" for 2πΣ(-1)^n(2n+1)q^{(n+1/2)^2},
            "product" for 2π q^{1/4} Π(1-q^{2m})^3

    Returns:
        The derivative of θ₁ at the origin
    """
    theta_settings = _settings(theta_settings)
    if method == "series":
        terms = _series_terms(tau, 0.0, theta_settings, weight=1)
        n = np.arange(terms)
        return complex(2.0 * np.pi * np.sum((-1.0) ** n * (2 * n + 1) * tau.nome_power((n + 0.5) ** 2)))
    if method == "product":
        factors = _product_factors(tau, 0.0, theta_settings)
        q2m = tau.nome_power(2 * np.arange(1, factors + 1))
        return complex(2.0 * np.pi * tau.nome_power(0.25) * np.prod((1.0 - q2m) ** 3))
    raise ValueError(f"Unknown method '{method}', expected 'series' or 'product'")


def theta1_normalized(z: ComplexLike, tau: TauParameter,
                      theta_settings: Optional[ThetaSettings] = None) -> ComplexLike:
    """θ̃₁(z|τ) = θ₁(z|τ)/θ₁′(0|τ), normalized so that θ̃₁(z) ~ z at the origin"""
    return theta1_series(z, tau, theta_settings) / theta1_prime_zero(tau, theta_settings)


def theta1_over_z(z: ComplexLike, tau: TauParameter,
                  theta_settings: Optional[ThetaSettings] = None) -> ComplexLike:
    """
    θ̃₁(z|τ)/z, finite at z = 0 where it equals 1

    Each sin((2n+1)πz)/z is evaluated as (2n+1)π sinc((2n+1)z).
    """
    theta_settings = _settings(theta_settings)
    z_arr = np.asarray(z, dtype=complex)
    y_max = _strip_height(z_arr, tau)
    terms = _series_terms(tau, y_max, theta_settings, weight=1)
    n = np.arange(terms)
    odd = 2 * n + 1
    coefficients = 2.0 * (-1.0) ** n * tau.nome_power((n + 0.5) ** 2) * np.pi * odd
    values = np.sum(coefficients * np.sinc(np.multiply.outer(z_arr, odd)), axis=-1)
    return _finish(values / theta1_prime_zero(tau, theta_settings), z)


def lattice_distance(z: ComplexLike, tau: TauParameter) -> Union[float, np.ndarray]:
    """Distance from z to the nearest point of the zero lattice ℤ + τℤ"""
    z_arr = np.asarray(z, dtype=complex)
    k0 = np.round(z_arr.imag / tau.tau.imag)
    best = np.full(z_arr.shape, np.inf)
    for dk in (-1, 0, 1):
        shifted = z_arr - (k0 + dk) * tau.tau
        m0 = np.round(shifted.real)
        for dm in (-1, 0, 1):
            best = np.minimum(best, np.abs(shifted - (m0 + dm)))
    if np.ndim(z) == 0:
        return float(best)
    return best


def check_zero_guard(z: ComplexLike, tau: TauParameter, zero_guard: Optional[float] = None) -> None:
    """Raise NearZeroError if any point is within zero_guard of a lattice zero"""
    zero_guard = settings.ZERO_GUARD if zero_guard is None else zero_guard
    distance = np.min(np.atleast_1d(lattice_distance(z, tau)))
    if distance <= zero_guard:
        raise NearZeroError(
            f"point within {distance:.3g} of a zero of theta1 (zero_guard={zero_guard:g})"
        )


def theta1_log_derivative(z: ComplexLike, tau: TauParameter,
                          theta_settings: Optional[ThetaSettings] = None,
                          zero_guard: Optional[float] = None) -> ComplexLike:
    """
    θ̃₁′(z|τ)/θ̃₁(z|τ)

    Raises:
        NearZeroError: if z is within zero_guard of the lattice ℤ + τℤ
    """
    check_zero_guard(z, tau, zero_guard)
    return theta1_derivative(z, tau, theta_settings) / theta1_series(z, tau, theta_settings)


def degeneration_error(z_grid: Sequence[float], tau: TauParameter,
                       theta_settings: Optional[ThetaSettings] = None) -> float:
    """
    sup over the grid of |θ̃₁(x|τ) - sin(πx)/π|

    Args:
        z_grid: Real points inside (0, 1)
        tau: Half-period ratio

    Returns:
        The largest deviation from the trigonometric limit
    """
    x = np.asarray(z_grid, dtype=float)
    if x.size == 0 or np.any(x <= 0.0) or np.any(x >= 1.0):
        raise DomainError("degeneration grid must be non-empty and inside (0, 1)")
    deviation = np.abs(theta1_normalized(x, tau, theta_settings) - np.sin(np.pi * x) / np.pi)
    return float(np.max(deviation))
