from .paths import PathSpec
from .tracking import path_clearance, track_argument, wrap_phase
from .unwrap import (
    PhaseProfile,
    nodal_jump,
    phase_increment,
    sl_order2,
    sl_seed,
    unwrap_phase,
    winding_number,
)

__all__ = [
    'PathSpec',
    'PhaseProfile',
    'nodal_jump',
    'path_clearance',
    'phase_increment',
    'sl_order2',
    'sl_seed',
    'track_argument',
    'unwrap_phase',
    'winding_number',
    'wrap_phase',
]
