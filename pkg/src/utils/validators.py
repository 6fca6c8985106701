"""
Input validation for the command line
"""
import math
from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from config import settings
from src.utils.helpers import uniform_grid

SUBCOMMANDS = ('theta', 'tower', 'verify', 'generating', 'phase')
SUITE_CHOICES = (
    'theta-cross', 'backbone', 'degeneration', 'boundary', 'phase', 'generating', 'clausen-values', 'all',
)


class CliConfig(BaseModel):
    """Validated command-line parameters"""

    model_config = ConfigDict(frozen=True)

    subcommand: Literal['theta', 'tower', 'verify', 'generating', 'phase']
    tau_re: float = 0.0
    tau_im: float = 1.0
    seed_kind: Literal['polylog', 'circular', 'elliptic'] = 'circular'
    order: int = Field(default=2, ge=1)
    grid_lo: float = 0.1
    grid_hi: float = 0.9
    grid_points: int = Field(default=9, ge=2)
    lam: float = 0.5
    fd_step: float = Field(default=1e-4, gt=0)
    uncorrected: bool = False
    output_format: Literal['csv', 'json'] = 'csv'
    output_path: Optional[str] = None
    suites: List[str] = Field(default_factory=lambda: ['all'])
    sample_seed: int = settings.SUITE_SEED
    waypoints: Optional[List[str]] = None
    interp_tol: Optional[float] = Field(default=None, gt=0)

    @field_validator('waypoints')
    @classmethod
    def _parse_waypoints(cls, value: Optional[List[str]]) -> Optional[List[str]]:
        if value is not None:
            for text in value:
                complex(text.replace('i', 'j'))
        return value

    @field_validator('suites')
    @classmethod
    def _known_suites(cls, value: List[str]) -> List[str]:
        unknown = [name for name in value if name not in SUITE_CHOICES]
        if unknown:
            raise ValueError(f"unknown suite(s) {', '.join(unknown)}; expected one of {', '.join(SUITE_CHOICES)}")
        return value

    @model_validator(mode='after')
    def _check_grid(self) -> "CliConfig":
        # polylog towers run in the angle θ, whose period is 2π
        upper = 2.0 * math.pi if (self.subcommand in ('tower', 'generating') and self.seed_kind == 'polylog') else 1.0
        if not (math.isfinite(self.grid_lo) and math.isfinite(self.grid_hi)):
            raise ValueError("grid bounds must be finite")
        if not 0.0 <= self.grid_lo < self.grid_hi < upper:
            raise ValueError(f"grid must satisfy 0 <= lo < hi < {upper:g}, got [{self.grid_lo:g}, {self.grid_hi:g}]")
        if self.waypoints is not None and len(self.waypoints) < 2:
            raise ValueError("a path needs at least two waypoints")
        return self

    @property
    def tau(self) -> complex:
        return complex(self.tau_re, self.tau_im)

    def grid(self):
        return uniform_grid(self.grid_lo, self.grid_hi, self.grid_points)

    def path_points(self) -> Optional[List[complex]]:
        if self.waypoints is None:
            return None
        return [complex(text.replace('i', 'j')) for text in self.waypoints]

    def selected_suites(self) -> List[str]:
        if 'all' in self.suites:
            return [name for name in SUITE_CHOICES if name != 'all']
        return list(self.suites)
