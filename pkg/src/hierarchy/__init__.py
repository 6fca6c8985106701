from src.phase.paths import PathSpec

from .quadrature import path_integrate
from .seeds import SEED_KINDS, Seed, seed_log
from .tower import (
    Tower,
    build_tower,
    cl_tower,
    eval_tower,
    polylog_to_circular_shift,
    polylog_tower_at_circular_scale,
    reconcile_polylog_tower,
    singular_part,
    sl_tower,
    tower_to_circular_shift,
)

__all__ = [
    'PathSpec',
    'SEED_KINDS',
    'Seed',
    'Tower',
    'build_tower',
    'cl_tower',
    'eval_tower',
    'path_integrate',
    'polylog_to_circular_shift',
    'polylog_tower_at_circular_scale',
    'reconcile_polylog_tower',
    'seed_log',
    'singular_part',
    'sl_tower',
    'tower_to_circular_shift',
]
