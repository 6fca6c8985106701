"""
Truncated generating series 𝓕_N(w;λ) = Σ_{n=1}^N F_n(w) λ^{n-1} and the
residuals of its differential equation
"""
import logging
from dataclasses import dataclass

import numpy as np

from src.hierarchy.tower import Tower, cl_tower, eval_tower, sl_tower
from src.utils.errors import DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GeneratingSlice:
    """A tower truncated at order N with a fixed deformation parameter λ"""

    tower: Tower
    N: int
    lam: complex

    def __post_init__(self):
        if int(self.N) != self.N or not 1 <= self.N <= self.tower.max_order:
            raise DomainError(f"truncation N={self.N} outside 1..{self.tower.max_order}")
        object.__setattr__(self, 'lam', complex(self.lam))

    @property
    def is_real(self) -> bool:
        return self.lam.imag == 0.0

    def weights(self) -> np.ndarray:
        """λ^0 .. λ^{N-1}"""
        return np.asarray([self.lam ** k for k in range(self.N)])


@dataclass(frozen=True)
class ClslResiduals:
    """Residuals of the CL/SL projection equations at one point"""

    a_corrected: float
    b_corrected: float
    a_uncorrected: float
    b_uncorrected: float


def _check_interior(slice_: GeneratingSlice, w: float, h: float = 0.0) -> None:
    x_lo, x_hi = slice_.tower.domain
    if not (x_lo < w - h and w + h < x_hi and w - h > 0.0):
        raise DomainError(f"w={w:g} with step h={h:g} must lie inside ({max(x_lo, 0.0):g}, {x_hi:g})")


def _series(slice_: GeneratingSlice, level, w) -> complex:
    weights = slice_.weights()
    return sum(weights[n - 1] * level(slice_.tower, n, w) for n in range(1, slice_.N + 1))


def eval_generating(slice_: GeneratingSlice, w: float) -> complex:
    """The finite sum Σ_{n=1}^N F_n(w) λ^{n-1}"""
    _check_interior(slice_, w)
    return complex(_series(slice_, eval_tower, w))


def generating_residual(slice_: GeneratingSlice, w: float, h: float = 1e-4,
                        uncorrected: bool = False) -> complex:
    """
    Residual of the truncated generating equation at w

    The exact identity for the truncated series is

        ∂_w 𝓕_N = F₁′ + λ 𝓕_N - λ^N F_N

    and the returned value is FD_h[𝓕_N] - F₁′ - λ𝓕_N + λ^N F_N, which is
    O(h²). With uncorrected=True the printed form FD_h[𝓕_N] - λ𝓕_N is
    returned instead; it approaches F₁′ - λ^N F_N and is not small.

    Args:
        slice_: Truncated series
        w: Interior point of the tower domain
        h: Central difference step
        uncorrected: Return the residual without the boundary terms

    Returns:
        Complex residual
    """
    if h <= 0.0:
        raise DomainError(f"finite difference step must be positive, got {h:g}")
    _check_interior(slice_, w, h)
    lam = slice_.lam
    derivative = (eval_generating(slice_, w + h) - eval_generating(slice_, w - h)) / (2.0 * h)
    value = eval_generating(slice_, w)
    if uncorrected:
        return derivative - lam * value
    top = eval_tower(slice_.tower, slice_.N, w)
    seed_derivative = slice_.tower.seed.log_derivative(w)
    return derivative - seed_derivative - lam * value + lam ** slice_.N * top


def generating_clsl(slice_: GeneratingSlice, w: float):
    """
    CL/SL projections (𝓐_N, 𝓑_N) with 𝓕_N = ½𝓐_N - (i/2)𝓑_N

    Raises:
        DomainError: if λ is not real
    """
    if not slice_.is_real:
        raise DomainError(f"CL/SL split needs a real lambda, got {slice_.lam}")
    _check_interior(slice_, w)
    a_series = float(np.real(_series(slice_, cl_tower, w)))
    b_series = float(np.real(_series(slice_, sl_tower, w)))
    return a_series, b_series


def clsl_residuals(slice_: GeneratingSlice, w: float, h: float = 1e-4) -> ClslResiduals:
    """
    Residuals of ∂_w𝓐_N = 2Re F₁′ + λ𝓐_N - λ^N A(N) and of the matching
    𝓑 equation with -2Im F₁′, next to the uncorrected forms ∂_w𝓐 - λ𝓐
    """
    if h <= 0.0:
        raise DomainError(f"finite difference step must be positive, got {h:g}")
    _check_interior(slice_, w, h)
    lam = slice_.lam.real
    a_plus, b_plus = generating_clsl(slice_, w + h)
    a_minus, b_minus = generating_clsl(slice_, w - h)
    a_value, b_value = generating_clsl(slice_, w)
    da = (a_plus - a_minus) / (2.0 * h)
    db = (b_plus - b_minus) / (2.0 * h)
    seed_derivative = slice_.tower.seed.log_derivative(w)
    top_a = cl_tower(slice_.tower, slice_.N, w)
    top_b = sl_tower(slice_.tower, slice_.N, w)
    return ClslResiduals(
        a_corrected=da - 2.0 * seed_derivative.real - lam * a_value + lam ** slice_.N * top_a,
        b_corrected=db + 2.0 * seed_derivative.imag - lam * b_value + lam ** slice_.N * top_b,
        a_uncorrected=da - lam * a_value,
        b_uncorrected=db - lam * b_value,
    )
