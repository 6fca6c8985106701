import math

import numpy as np
import pytest

from src.circular import (
    boundary_constants,
    circular_master,
    cl_component,
    clausen_cl2,
    cosine_series,
    harmonic_number,
    i_power,
    polylog_partial_sum,
    polylog_unit_circle,
    sine_series,
    sl_component,
    zeta_value,
)
from src.utils.errors import DomainError

CATALAN = 0.915965594177219015
THETA = np.linspace(0.1, 2 * math.pi - 0.1, 41)


def test_zeta_values():
    assert zeta_value(2) == pytest.approx(math.pi ** 2 / 6, rel=1e-15)
    assert zeta_value(4) == pytest.approx(math.pi ** 4 / 90, rel=1e-15)
    assert zeta_value(3) == pytest.approx(1.2020569031595942, rel=1e-15)
    with pytest.raises(DomainError):
        zeta_value(1)


def test_harmonic_numbers_start_at_zero():
    assert harmonic_number(0) == 0.0
    assert harmonic_number(2) == 1.5
    assert harmonic_number(3) == pytest.approx(11 / 6)


def test_i_power_is_exact():
    assert i_power(-2) == -1
    assert i_power(-1) == -1j
    assert i_power(5) == 1j


def test_first_order_closed_forms():
    np.testing.assert_allclose(cl_component(1, THETA), math.pi - THETA, atol=1e-10)
    np.testing.assert_allclose(sl_component(1, THETA), -2 * np.log(2 * np.sin(THETA / 2)), atol=1e-10)


def test_second_order_real_part_is_quadratic():
    expected = math.pi ** 2 / 6 - THETA * (2 * math.pi - THETA) / 4
    np.testing.assert_allclose(cosine_series(2, THETA), expected, atol=1e-13)


def test_second_order_component_at_base_point():
    assert cl_component(2, 0.0) == pytest.approx(-math.pi ** 2 / 3, abs=1e-10)


def test_catalan_from_second_order_sl():
    assert sl_component(2, math.pi / 2) == pytest.approx(2 * CATALAN, abs=1e-8)


def test_clausen_values():
    assert clausen_cl2(math.pi) == pytest.approx(0.0, abs=1e-13)
    assert clausen_cl2(math.pi / 3) == pytest.approx(1.0149416064096536, abs=1e-13)
    assert clausen_cl2(-1.0) == pytest.approx(-clausen_cl2(1.0), abs=1e-14)


def test_periodic_in_theta():
    assert polylog_unit_circle(3, 0.7 + 2 * math.pi) == pytest.approx(polylog_unit_circle(3, 0.7), abs=1e-13)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_against_partial_sums(n):
    for theta in (0.2, 1.3, 3.0, 5.9):
        partial, tail = polylog_partial_sum(n, theta, 20000)
        assert abs(polylog_unit_circle(n, theta) - partial) <= tail + 1e-13


def test_partial_sum_tail_bound():
    value, tail = polylog_partial_sum(2, 0.0, 1000)
    assert tail == pytest.approx(1e-3)
    assert 0.0 < zeta_value(2) - value.real <= tail
    assert polylog_partial_sum(1, 1.0, 10)[1] == math.inf


def test_first_order_master_is_log():
    theta = 1.2
    assert circular_master(1, theta) == pytest.approx(1j * np.log(1 - np.exp(1j * theta)), abs=1e-14)
    with pytest.raises(DomainError):
        polylog_unit_circle(1, 0.0)


def test_sine_series_matches_sl_component():
    np.testing.assert_allclose(sl_component(3, THETA), -2 * np.imag(1j * polylog_unit_circle(3, THETA)), atol=1e-14)
    np.testing.assert_allclose(sine_series(3, THETA), np.imag(polylog_unit_circle(3, THETA)))


def test_boundary_constants():
    second = boundary_constants(2)
    assert second.C_n == pytest.approx(-math.pi ** 2 / 3, abs=1e-13)
    assert second.S_n == pytest.approx(0.0, abs=1e-15)
    third = boundary_constants(3)
    assert third.C_n == pytest.approx(0.0, abs=1e-15)
    assert third.S_n == pytest.approx(-2 * zeta_value(3), abs=1e-13)
    assert third.master_value == pytest.approx(1j * zeta_value(3), abs=1e-13)
    with pytest.raises(DomainError):
        boundary_constants(1)


def test_invalid_order():
    with pytest.raises(DomainError):
        polylog_unit_circle(0, 1.0)


BACKBONE_THETA = np.linspace(0.2, 2 * math.pi - 0.2, 61)


def central_difference(func, theta, h=1e-4):
    return (func(theta + h) - func(theta - h)) / (2 * h)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_master_backbone(n):
    fd = central_difference(lambda t: circular_master(n + 1, t), BACKBONE_THETA)
    assert np.max(np.abs(fd - circular_master(n, BACKBONE_THETA))) <= 1e-6


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_parallel_recursion(n):
    fd_a = central_difference(lambda t: cl_component(n + 1, t), BACKBONE_THETA)
    fd_b = central_difference(lambda t: sl_component(n + 1, t), BACKBONE_THETA)
    assert np.max(np.abs(fd_a - cl_component(n, BACKBONE_THETA))) <= 1e-6
    assert np.max(np.abs(fd_b - sl_component(n, BACKBONE_THETA))) <= 1e-6


def test_fourth_order_master_derivative():
    for theta in (0.7, 2.0, 4.5):
        fd = (circular_master(4, theta + 1e-4) - circular_master(4, theta - 1e-4)) / 2e-4
        assert abs(fd - circular_master(3, theta)) <= 1e-6


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_conjugate_symmetry(n):
    mirrored = polylog_unit_circle(n, 2 * math.pi - THETA)
    np.testing.assert_allclose(mirrored, np.conj(polylog_unit_circle(n, THETA)), rtol=0, atol=1e-12)


def test_first_order_values():
    assert polylog_unit_circle(1, math.pi) == pytest.approx(-math.log(2), abs=1e-15)
    assert circular_master(1, math.pi) == pytest.approx(1j * math.log(2), abs=1e-15)
    assert circular_master(2, 0.0) == pytest.approx(-math.pi ** 2 / 6, abs=1e-13)
    assert sl_component(1, 2 * math.pi / 3) == pytest.approx(-math.log(3), abs=1e-12)
