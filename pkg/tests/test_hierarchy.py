import dataclasses
import json
import math

import numpy as np
import pytest

from src.circular import clausen_cl2, zeta_value
from src.hierarchy import (
    PathSpec,
    Seed,
    Tower,
    build_tower,
    cl_tower,
    eval_tower,
    path_integrate,
    polylog_to_circular_shift,
    polylog_tower_at_circular_scale,
    reconcile_polylog_tower,
    seed_log,
    singular_part,
    sl_tower,
    tower_to_circular_shift,
)
from src.theta import TauParameter, ThetaSettings
from src.utils.errors import DomainError, NearZeroError, ResolutionError
from src.verification import log_log_points, slope_fit

ELLIPTIC_TAU = TauParameter(complex(0.3, 1.5))


@pytest.fixture(scope="module")
def circular_tower():
    return build_tower(Seed.circular(), 4)


@pytest.fixture(scope="module")
def polylog_tower():
    return build_tower(Seed.polylog(), 4)


@pytest.fixture(scope="module")
def elliptic_tower():
    return build_tower(Seed.elliptic(ELLIPTIC_TAU), 3)


def test_seed_constants():
    assert Seed.polylog().S_prime_0 == -1j
    assert Seed.circular().S_prime_0 == 2 * math.pi
    assert Seed.elliptic(ELLIPTIC_TAU).S_prime_0 == 1
    assert Seed.polylog().period == pytest.approx(2 * math.pi)


def test_seed_validation():
    with pytest.raises(DomainError):
        Seed("elliptic")
    with pytest.raises(DomainError):
        Seed("hyperbolic")
    with pytest.raises(DomainError):
        Seed("circular", ELLIPTIC_TAU)


def test_seed_ratio_at_origin_is_derivative():
    for seed in (Seed.polylog(), Seed.circular(), Seed.elliptic(ELLIPTIC_TAU)):
        assert seed.ratio(0.0) == pytest.approx(seed.S_prime_0, abs=1e-14)


def test_seed_log_values():
    assert seed_log(Seed.circular(), 0.5) == pytest.approx(math.log(2), abs=1e-14)
    assert seed_log(Seed.elliptic(TauParameter(4j)), 0.5) == pytest.approx(-math.log(math.pi), abs=1e-9)
    theta = 1.0
    assert seed_log(Seed.polylog(), theta).real == pytest.approx(math.log(2 * math.sin(theta / 2)), abs=1e-14)


def test_seed_log_near_zero():
    with pytest.raises(NearZeroError):
        seed_log(Seed.circular(), 1.0)


def test_log_derivative_closed_forms():
    x = 0.3
    assert Seed.circular().log_derivative(x) == pytest.approx(math.pi / math.tan(math.pi * x))
    s = Seed.polylog()
    h = 1e-6
    fd = (seed_log(s, x + h) - seed_log(s, x - h)) / (2 * h)
    assert s.log_derivative(x) == pytest.approx(fd, abs=1e-6)


def test_singular_ladder_closed_form():
    z = np.array([0.2, 0.5, 0.9])
    np.testing.assert_allclose(singular_part(3, z), z ** 2 / 2 * (np.log(z) - 1.5))
    np.testing.assert_allclose(singular_part(2, z), z * np.log(z) - z)
    assert singular_part(2, 0.0) == 0.0


def test_first_level_is_log_seed(circular_tower):
    x = np.linspace(0.05, 0.95, 19)
    np.testing.assert_allclose(eval_tower(circular_tower, 1, x), np.log(2 * np.sin(np.pi * x)), atol=1e-11)


def test_second_level_is_clausen_integral(circular_tower):
    x = np.linspace(0.05, 0.95, 37)
    expected = -clausen_cl2(2 * np.pi * x) / (2 * np.pi)
    np.testing.assert_allclose(eval_tower(circular_tower, 2, x), expected, atol=1e-8)


def test_base_point_vanishes(circular_tower, elliptic_tower):
    for tower in (circular_tower, elliptic_tower):
        for n in range(2, tower.max_order + 1):
            assert abs(eval_tower(tower, n, 0.0)) <= 1e-13


@pytest.mark.parametrize("fixture", ["polylog_tower", "circular_tower", "elliptic_tower"])
def test_finite_difference_backbone(fixture, request):
    tower = request.getfixturevalue(fixture)
    h = 1e-4
    grid = tower.seed.period * np.linspace(0.1, 0.9, 50)
    for n in range(1, tower.max_order):
        fd = (eval_tower(tower, n + 1, grid + h) - eval_tower(tower, n + 1, grid - h)) / (2 * h)
        assert np.max(np.abs(fd - eval_tower(tower, n, grid))) <= 1e-6


def test_eval_tower_domain_errors(circular_tower):
    with pytest.raises(DomainError):
        eval_tower(circular_tower, 0, 0.5)
    with pytest.raises(DomainError):
        eval_tower(circular_tower, 5, 0.5)
    with pytest.raises(DomainError):
        eval_tower(circular_tower, 2, 0.995)
    with pytest.raises(DomainError):
        eval_tower(circular_tower, 1, 0.0)


def test_build_tower_preconditions():
    with pytest.raises(DomainError):
        build_tower(Seed.circular(), 1)
    with pytest.raises(DomainError):
        build_tower(Seed.circular(), 2, resolution=8)
    with pytest.raises(DomainError):
        build_tower(Seed.circular(), 2, domain=(0.0, 1.2))
    with pytest.raises(ResolutionError):
        build_tower(Seed.circular(), 2, resolution=16, max_nodes=32)


def test_projections(elliptic_tower):
    x = 0.4
    value = eval_tower(elliptic_tower, 2, x)
    assert cl_tower(elliptic_tower, 2, x) == pytest.approx(2 * value.real)
    assert sl_tower(elliptic_tower, 2, x) == pytest.approx(-2 * value.imag)


def test_purely_imaginary_tau_has_no_sl_part():
    tower = build_tower(Seed.elliptic(TauParameter(2j)), 2)
    x = np.linspace(0.05, 0.95, 19)
    assert np.max(np.abs(sl_tower(tower, 1, x))) <= 1e-12


def test_degenerate_elliptic_tower():
    elliptic = build_tower(Seed.elliptic(TauParameter(4j)), 3)
    circular = build_tower(Seed.circular(), 3)
    x = np.linspace(0.05, 0.95, 37)
    np.testing.assert_allclose(cl_tower(elliptic, 1, x), 2 * np.log(np.sin(np.pi * x) / np.pi), atol=1e-8)
    for n in (1, 2, 3):
        shifted = eval_tower(circular, n, x) - tower_to_circular_shift(n, x)
        assert np.max(np.abs(eval_tower(elliptic, n, x) - shifted)) <= 1e-8


@pytest.mark.parametrize("tau", [TauParameter(1j), ELLIPTIC_TAU])
def test_second_order_local_expansion(tau):
    tower = build_tower(Seed.elliptic(tau), 2)
    z = np.logspace(-3, -1, 9)
    deviation = np.abs(eval_tower(tower, 2, z) - (z * np.log(z) - z))
    slope, _, _ = slope_fit(log_log_points(z, deviation))
    assert slope >= 2.9


def test_reconciliation_with_boundary_constants(polylog_tower):
    theta = np.linspace(0.5, 5.5, 21)
    for n in (2, 3, 4):
        assert reconcile_polylog_tower(polylog_tower, n, theta) <= 1e-9


def test_reconciliation_negative_control(polylog_tower):
    theta = np.linspace(0.5, 5.5, 21)
    control = reconcile_polylog_tower(polylog_tower, 2, theta, drop_constants=(2,))
    assert control == pytest.approx(zeta_value(2), abs=1e-3)


def test_reconciliation_needs_polylog_seed(circular_tower):
    with pytest.raises(DomainError):
        reconcile_polylog_tower(circular_tower, 2, [0.5])


def test_json_reload(elliptic_tower):
    reloaded = Tower.from_json(elliptic_tower.to_json())
    assert reloaded.seed == elliptic_tower.seed
    assert eval_tower(reloaded, 3, 0.37) == eval_tower(elliptic_tower, 3, 0.37)


def test_path_integral_matches_tower(elliptic_tower):
    value = path_integrate(elliptic_tower.seed, PathSpec.segment(0.0, 0.4), 1, tol=1e-11)
    assert value == pytest.approx(eval_tower(elliptic_tower, 2, 0.4), abs=1e-8)


def test_path_integral_is_path_independent(elliptic_tower):
    path = PathSpec((0.0, 0.2 + 0.2j, 0.4))
    value = path_integrate(elliptic_tower.seed, path, 1, tol=1e-11)
    assert value == pytest.approx(eval_tower(elliptic_tower, 2, 0.4), abs=1e-8)


def test_repeated_path_integral(circular_tower):
    value = path_integrate(Seed.circular(), PathSpec.segment(0.0, 0.4), 2, tol=1e-11)
    assert value == pytest.approx(eval_tower(circular_tower, 3, 0.4), abs=1e-8)


def test_circular_half_period_integral_vanishes():
    value = path_integrate(Seed.circular(), PathSpec.segment(0.0, 0.5), 1, tol=1e-11)
    assert abs(value) <= 1e-9


def test_closed_loop_reversal_cancels():
    seed = Seed.elliptic(ELLIPTIC_TAU)
    loop = PathSpec.rectangle(0.2 + 0.1j, 0.5, 0.4)
    forward = path_integrate(seed, loop, 1, tol=1e-11, initial=[0.0])
    backward = path_integrate(seed, loop.reversed(), 1, tol=1e-11, initial=[0.0])
    assert abs(forward + backward) <= 1e-10


def test_nonzero_start_needs_initial_values():
    with pytest.raises(DomainError):
        path_integrate(Seed.circular(), PathSpec.segment(0.2, 0.4), 1)


def test_path_through_zero_rejected():
    with pytest.raises(NearZeroError):
        path_integrate(Seed.circular(), PathSpec.segment(0.5, 1.5), 1, initial=[0.0])


def test_json_reload_keeps_theta_settings():
    theta_settings = ThetaSettings(truncation_eps=1e-14, max_terms=40)
    tower = build_tower(Seed.elliptic(ELLIPTIC_TAU, theta_settings), 2)
    reloaded = Tower.from_json(tower.to_json())
    assert reloaded.seed.theta_settings == theta_settings
    assert reloaded.seed == tower.seed


def test_tower_state_is_only_what_evaluation_reads(circular_tower):
    assert {f.name for f in dataclasses.fields(Tower)} == {
        'seed', 'max_order', 'domain', 'coefficients', 'interpolation_error', 'nodes',
    }
    assert set(json.loads(circular_tower.to_json())) == {
        'seed', 'max_order', 'domain', 'nodes', 'interpolation_error', 'coefficients',
    }


def test_polylog_seed_at_circular_scale():
    x = np.linspace(0.05, 0.95, 19)
    difference = seed_log(Seed.polylog(), 2 * np.pi * x) - seed_log(Seed.circular(), x)
    np.testing.assert_allclose(difference, 1j * np.pi * (x - 0.5), rtol=0, atol=1e-12)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_polylog_tower_at_circular_scale(polylog_tower, circular_tower, n):
    x = np.linspace(0.05, 0.95, 19)
    rescaled = polylog_tower_at_circular_scale(polylog_tower, n, x)
    expected = eval_tower(circular_tower, n, x) + polylog_to_circular_shift(n, x)
    assert np.max(np.abs(rescaled - expected)) <= 1e-8


def test_polylog_shift_is_imaginary_polynomial():
    assert polylog_to_circular_shift(1, 0.3) == pytest.approx(1j * math.pi * (0.3 - 0.5))
    assert polylog_to_circular_shift(2, 0.5) == pytest.approx(0.0)
    assert np.all(polylog_to_circular_shift(3, np.array([0.2, 0.4])).real == 0.0)
    with pytest.raises(DomainError):
        polylog_to_circular_shift(0, 0.3)


def test_circular_scale_needs_polylog_seed(circular_tower):
    with pytest.raises(DomainError):
        polylog_tower_at_circular_scale(circular_tower, 2, 0.4)
