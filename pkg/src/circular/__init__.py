from .polylog import (
    BoundaryConstants,
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

__all__ = [
    'BoundaryConstants',
    'boundary_constants',
    'circular_master',
    'cl_component',
    'clausen_cl2',
    'cosine_series',
    'harmonic_number',
    'i_power',
    'polylog_partial_sum',
    'polylog_unit_circle',
    'sine_series',
    'sl_component',
    'zeta_value',
]
