from .fitting import log_log_points, slope_fit
from .report import CheckResult, SuiteReport
from .suites import SUITE_NAMES, SuiteConfig, run_all, run_suite

__all__ = [
    'CheckResult',
    'SUITE_NAMES',
    'SuiteConfig',
    'SuiteReport',
    'log_log_points',
    'run_all',
    'run_suite',
    'slope_fit',
]
