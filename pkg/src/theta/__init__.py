from .jacobi import (
    DEFAULT_SETTINGS,
    TauParameter,
    ThetaSettings,
    check_zero_guard,
    degeneration_error,
    lattice_distance,
    theta1_derivative,
    theta1_log_derivative,
    theta1_normalized,
    theta1_over_z,
    theta1_prime_zero,
    theta1_product,
    theta1_series,
)

__all__ = [
    'DEFAULT_SETTINGS',
    'TauParameter',
    'ThetaSettings',
    'check_zero_guard',
    'degeneration_error',
    'lattice_distance',
    'theta1_derivative',
    'theta1_log_derivative',
    'theta1_normalized',
    'theta1_over_z',
    'theta1_prime_zero',
    'theta1_product',
    'theta1_series',
]
