import math

import numpy as np
import pytest

from src.hierarchy import Seed, build_tower, sl_tower
from src.phase import (
    PathSpec,
    nodal_jump,
    path_clearance,
    phase_increment,
    sl_order2,
    sl_seed,
    unwrap_phase,
    winding_number,
    wrap_phase,
)
from src.theta import TauParameter, theta1_log_derivative, theta1_normalized
from src.utils.errors import BranchError, DomainError, NearZeroError

TAU = TauParameter(complex(0.3, 1.5))


def test_path_validation():
    with pytest.raises(DomainError):
        PathSpec((0.5,))
    with pytest.raises(DomainError):
        PathSpec((0.1, 0.1, 0.4))
    with pytest.raises(DomainError):
        PathSpec.segment(0.0, 1.0).concatenated(PathSpec.segment(0.5, 0.7))


def test_path_geometry():
    rectangle = PathSpec.rectangle(0.1j, 0.5, 0.2)
    assert rectangle.length == pytest.approx(1.4)
    assert rectangle.is_closed
    assert rectangle.point_at(0.6) == pytest.approx(0.5 + 0.2j)
    assert rectangle.reversed().start == rectangle.end
    trimmed = PathSpec.segment(0.0, 1.0).trimmed_start(0.25)
    assert trimmed.start == pytest.approx(0.25)


def test_wrap_phase_range():
    wrapped = wrap_phase(np.array([3 * math.pi / 2, -3 * math.pi / 2, 0.1]))
    np.testing.assert_allclose(wrapped, [-math.pi / 2, math.pi / 2, 0.1])


def test_clearance():
    assert path_clearance(PathSpec.segment(0.2, 0.6), TAU) == pytest.approx(0.2)


def test_zero_phase_for_imaginary_tau():
    profile = unwrap_phase(TauParameter(2j), PathSpec.segment(0.1, 0.9))
    assert np.max(np.abs(profile.unwrapped_arg)) <= 1e-12
    assert len(profile.samples) == len(profile.parameters)


def test_profile_anchor_and_step_bound():
    profile = unwrap_phase(TAU, PathSpec.circle(0.0, 0.2))
    first = theta1_normalized(profile.positions[0], TAU)
    assert profile.unwrapped_arg[0] == pytest.approx(np.angle(first))
    assert profile.max_step_phase < math.pi / 2
    assert np.all(np.abs(np.diff(profile.unwrapped_arg)) < math.pi / 2)


def test_argument_derivative_identity():
    profile = unwrap_phase(TAU, PathSpec.segment(0.1, 0.9))
    s = np.linspace(0.05, 0.75, 29)
    fd = (profile.arg_at(s + 1e-5) - profile.arg_at(s - 1e-5)) / 2e-5
    expected = np.imag(theta1_log_derivative(0.1 + s, TAU))
    assert np.max(np.abs(fd - expected)) <= 1e-6


def test_full_turn_around_lattice_points():
    assert phase_increment(TauParameter(1j), PathSpec.circle(0.0, 0.2)) == pytest.approx(2 * math.pi, abs=1e-8)
    tau = TauParameter(1.2j)
    assert phase_increment(tau, PathSpec.circle(tau.tau, 0.2)) == pytest.approx(2 * math.pi, abs=1e-8)


def test_winding_numbers():
    assert winding_number(TauParameter(1j), 0.0, 0.2) == 1
    tau = TauParameter(1.2j)
    assert winding_number(tau, tau.tau, 0.2) == 1
    assert winding_number(TauParameter(1j), 0.5, 0.1) == 0


def test_winding_radius_bounds():
    with pytest.raises(DomainError):
        winding_number(TauParameter(1j), 0.0, 0.6)
    with pytest.raises(DomainError):
        winding_number(TauParameter(1j), 0.0, 1e-6)


def test_nodal_jump_tends_to_pi():
    coarse = abs(nodal_jump(TauParameter(1j), 1.0, 1e-2))
    fine = abs(nodal_jump(TauParameter(1j), 1.0, 1e-3))
    assert abs(fine - math.pi) <= 0.05
    assert abs(fine - math.pi) < abs(coarse - math.pi)


def test_no_jump_between_zeros():
    assert abs(nodal_jump(TauParameter(1j), 0.5, 1e-3)) < 0.05


def test_nodal_offset_guard():
    with pytest.raises(NearZeroError):
        nodal_jump(TauParameter(1j), 1.0, 1e-7)


def test_path_through_zero_rejected():
    with pytest.raises(NearZeroError):
        unwrap_phase(TAU, PathSpec.segment(-0.1, 0.1))


def test_refinement_depth_limit():
    with pytest.raises(BranchError):
        unwrap_phase(TAU, PathSpec.circle(0.0, 0.2, samples_hint=16), max_step=1e-3, max_depth=1)


def test_reversal_and_additivity():
    loop = PathSpec.rectangle(0.2 + 0.1j, 0.5, 0.4)
    assert phase_increment(TAU, loop) + phase_increment(TAU, loop.reversed()) == pytest.approx(0.0, abs=1e-10)
    first, second = PathSpec.segment(0.2, 0.6 + 0.3j), PathSpec.segment(0.6 + 0.3j, 0.8)
    whole = phase_increment(TAU, first.concatenated(second))
    assert whole == pytest.approx(phase_increment(TAU, first) + phase_increment(TAU, second), abs=1e-10)
    reverse = phase_increment(TAU, first.reversed())
    assert reverse == pytest.approx(-phase_increment(TAU, first), abs=1e-10)


def test_sl_seed_values():
    assert sl_seed(TauParameter(3j), 0.5) == pytest.approx(0.0, abs=1e-14)
    x = np.array([0.2, 0.5, 0.8])
    values = sl_seed(TAU, x)
    assert values.shape == (3,)
    np.testing.assert_allclose(values, -2 * np.angle(theta1_normalized(x, TAU)), atol=1e-12)


def test_sl_seed_mirror_points():
    assert sl_seed(TAU, 0.3) == pytest.approx(sl_seed(TAU, 0.7), abs=1e-12)


def test_sl_seed_domain():
    with pytest.raises(DomainError):
        sl_seed(TAU, 1.0)


def test_sl_seed_collapse():
    x = np.linspace(0.1, 0.9, 17)
    low = np.max(np.abs(sl_seed(TauParameter(complex(0.3, 2.0)), x)))
    high = np.max(np.abs(sl_seed(TauParameter(complex(0.3, 3.0)), x)))
    assert low / high == pytest.approx(math.exp(2 * math.pi), rel=0.05)


def test_sl_order2_values():
    assert sl_order2(TauParameter(4j), 0.5) == pytest.approx(0.0, abs=1e-10)
    assert abs(sl_order2(TAU, 1e-3)) <= 2e-3 * np.max(np.abs(sl_seed(TAU, np.linspace(0.01, 0.5, 11))))
    with pytest.raises(DomainError):
        sl_order2(TAU, 0.995)


def test_sl_order2_matches_tower():
    tower = build_tower(Seed.elliptic(TAU), 2)
    assert sl_order2(TAU, 0.4) == pytest.approx(sl_tower(tower, 2, 0.4), abs=1e-8)
