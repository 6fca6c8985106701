import json
import math

import numpy as np
import pytest

from src.utils.errors import ConfigError, DegenerateFitError
from src.verification import (
    SUITE_NAMES,
    CheckResult,
    SuiteConfig,
    SuiteReport,
    log_log_points,
    run_suite,
    slope_fit,
)


def test_slope_of_exact_power_law():
    x = np.logspace(-3, -1, 7)
    slope, intercept, max_dev = slope_fit(log_log_points(x, 5.0 * x ** 3))
    assert slope == pytest.approx(3.0, abs=1e-12)
    assert intercept == pytest.approx(math.log(5.0), abs=1e-10)
    assert max_dev <= 1e-10


def test_slope_fit_rejects_degenerate_input():
    with pytest.raises(DegenerateFitError):
        slope_fit([(0.0, 1.0), (1.0, 2.0)])
    with pytest.raises(DegenerateFitError):
        slope_fit([(1.0, 0.0), (1.0, 1.0), (1.0, 2.0)])
    with pytest.raises(DegenerateFitError):
        slope_fit([(0.0, 0.0), (1.0, float('nan')), (2.0, 1.0)])
    with pytest.raises(DegenerateFitError):
        log_log_points([1.0, 2.0], [0.0, 1.0])


def test_check_result_relations():
    assert CheckResult.upper('small', 1e-9, 1e-6).passed
    assert not CheckResult.upper('large', 1e-3, 1e-6).passed
    lower = CheckResult.lower('control', 0.5, 0.1)
    assert lower.passed and lower.relation == '>='


def test_non_finite_measurement_fails():
    check = CheckResult.upper('nan', float('nan'), 1.0)
    assert not check.passed
    assert math.isfinite(check.measured)


def test_report_json_uses_pass_key():
    report = SuiteReport(suite_name='demo', checks=[
        CheckResult.upper('a', 1e-9, 1e-6),
        CheckResult.upper('b', 1.0, 1e-6),
    ])
    data = json.loads(report.to_json())
    assert data['suite_name'] == 'demo'
    assert data['overall_pass'] is False
    assert [check['pass'] for check in data['checks']] == [True, False]
    assert [check.check_id for check in report.failed] == ['b']
    assert report.summary().startswith('✗ demo: 1/2')


def test_empty_report_passes():
    assert SuiteReport(suite_name='empty').overall_pass


def test_unknown_suite():
    with pytest.raises(ConfigError):
        run_suite('nonsense')


def test_malformed_config():
    with pytest.raises(ConfigError):
        run_suite('clausen-values', {'grid_points': 1})
    with pytest.raises(ConfigError):
        run_suite('clausen-values', {'no_such_field': 3})


def test_suite_names_are_declared_in_order():
    assert SUITE_NAMES == (
        'theta-cross', 'backbone', 'degeneration', 'boundary', 'phase', 'generating', 'clausen-values',
    )


def test_clausen_values_suite():
    report = run_suite('clausen-values')
    assert report.overall_pass, report.failed
    assert {check.check_id for check in report.checks} >= {'B2-catalan', 'clausen-integral'}


def test_reports_are_deterministic():
    config = SuiteConfig(seed=7, theta_samples=20, quasi_samples=10)
    first = run_suite('theta-cross', config)
    second = run_suite('theta-cross', {'seed': 7, 'theta_samples': 20, 'quasi_samples': 10})
    assert first.to_json() == second.to_json()
    assert first.overall_pass, first.failed


@pytest.mark.slow
@pytest.mark.parametrize("name", SUITE_NAMES)
def test_every_suite_passes(name):
    report = run_suite(name)
    assert report.overall_pass, [check.check_id for check in report.failed]


def test_clausen_values_covers_the_circular_backbone():
    report = run_suite('clausen-values', {'max_order': 3})
    ids = {check.check_id for check in report.checks}
    assert {'circular-fd-backbone', 'circular-fd-cl', 'circular-fd-sl', 'conjugate-symmetry'} <= ids
    assert report.overall_pass, report.failed


def test_backbone_suite_at_low_order():
    report = run_suite('backbone', {'max_order': 2, 'grid_points': 10})
    ids = [check.check_id for check in report.checks]
    assert 'elliptic-i-second-order-slope' in ids
    assert report.overall_pass, [check.check_id for check in report.failed]


@pytest.mark.slow
def test_degeneration_suite_bridges_polylog_and_circular():
    report = run_suite('degeneration', {'max_order': 2, 'grid_points': 9})
    checks = {check.check_id: check for check in report.checks}
    assert checks['polylog-circular-seed'].passed
    assert checks['polylog-circular-tower'].passed
