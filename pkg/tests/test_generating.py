import numpy as np
import pytest

from src.generating import (
    GeneratingSlice,
    clsl_residuals,
    eval_generating,
    generating_clsl,
    generating_residual,
)
from src.hierarchy import Seed, build_tower, eval_tower
from src.theta import TauParameter
from src.utils.errors import DomainError

W_GRID = np.linspace(0.25, 0.75, 5)


@pytest.fixture(scope="module")
def circular_tower():
    return build_tower(Seed.circular(), 4)


@pytest.fixture(scope="module")
def elliptic_tower():
    return build_tower(Seed.elliptic(TauParameter(complex(0.3, 1.5))), 4)


def test_truncation_bounds(circular_tower):
    with pytest.raises(DomainError):
        GeneratingSlice(circular_tower, 5, 0.5)
    with pytest.raises(DomainError):
        GeneratingSlice(circular_tower, 0, 0.5)


def test_weights_start_at_one(circular_tower):
    np.testing.assert_allclose(GeneratingSlice(circular_tower, 3, 0.0).weights(), [1, 0, 0])
    np.testing.assert_allclose(GeneratingSlice(circular_tower, 3, 2.0).weights(), [1, 2, 4])


def test_zero_lambda_is_first_level(circular_tower):
    slice_ = GeneratingSlice(circular_tower, 4, 0.0)
    assert eval_generating(slice_, 0.4) == pytest.approx(eval_tower(circular_tower, 1, 0.4))


def test_finite_sum(elliptic_tower):
    lam = 0.3 - 0.2j
    slice_ = GeneratingSlice(elliptic_tower, 3, lam)
    expected = sum(eval_tower(elliptic_tower, n, 0.6) * lam ** (n - 1) for n in (1, 2, 3))
    assert eval_generating(slice_, 0.6) == pytest.approx(expected, abs=1e-14)


@pytest.mark.parametrize("lam", [0.0, 0.5, -1.0, 0.3 + 0.4j])
@pytest.mark.parametrize("N", [1, 2, 4])
def test_truncation_identity(circular_tower, elliptic_tower, N, lam):
    for tower in (circular_tower, elliptic_tower):
        slice_ = GeneratingSlice(tower, N, lam)
        for w in W_GRID:
            assert abs(generating_residual(slice_, w)) <= 1e-6


def test_uncorrected_residual_is_boundary_terms(circular_tower):
    slice_ = GeneratingSlice(circular_tower, 4, 0.5)
    w = 0.3
    residual = generating_residual(slice_, w, uncorrected=True)
    expected = Seed.circular().log_derivative(w) - 0.5 ** 4 * eval_tower(circular_tower, 4, w)
    assert residual == pytest.approx(expected, abs=1e-6)
    assert abs(residual) >= 0.1


def test_residual_domain_errors(circular_tower):
    slice_ = GeneratingSlice(circular_tower, 2, 0.5)
    with pytest.raises(DomainError):
        generating_residual(slice_, 0.5, h=0.0)
    with pytest.raises(DomainError):
        generating_residual(slice_, 0.995)
    with pytest.raises(DomainError):
        eval_generating(slice_, 0.0)


def test_clsl_needs_real_lambda(elliptic_tower):
    with pytest.raises(DomainError):
        generating_clsl(GeneratingSlice(elliptic_tower, 2, 0.5j), 0.4)


def test_clsl_reconstruction(elliptic_tower):
    slice_ = GeneratingSlice(elliptic_tower, 4, -0.7)
    for w in W_GRID:
        a_series, b_series = generating_clsl(slice_, w)
        assert 0.5 * a_series - 0.5j * b_series == pytest.approx(eval_generating(slice_, w), abs=1e-12)


@pytest.mark.parametrize("lam", [0.0, 0.5, 1.0])
def test_clsl_identities(elliptic_tower, lam):
    slice_ = GeneratingSlice(elliptic_tower, 3, lam)
    for w in W_GRID:
        res = clsl_residuals(slice_, w)
        assert abs(res.a_corrected) <= 2e-6
        assert abs(res.b_corrected) <= 2e-6


def test_clsl_uncorrected_control(circular_tower):
    res = clsl_residuals(GeneratingSlice(circular_tower, 4, 0.5), 0.3)
    assert abs(res.a_uncorrected) >= 0.1
    assert abs(res.a_corrected) <= 2e-6


def test_imaginary_tau_has_no_sl_series():
    tower = build_tower(Seed.elliptic(TauParameter(2j)), 3)
    slice_ = GeneratingSlice(tower, 3, 0.5)
    for w in W_GRID:
        _, b_series = generating_clsl(slice_, w)
        assert abs(b_series) <= 1e-12
