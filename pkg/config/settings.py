"""
Configuration management using environment variables
"""
import math
import os
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables from .env file
BASE_DIR = Path(__file__).resolve().parent.parent
load_dotenv(BASE_DIR / '.env')


def _float(name: str, default: float) -> float:
    return float(os.getenv(name, str(default)))


def _int(name: str, default: int) -> int:
    return int(os.getenv(name, str(default)))


class Settings:
    """Numerical defaults and runtime settings loaded from environment variables"""

    # Application Settings
    LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO')
    OUTPUT_DIR = os.getenv('CLAUSEN_OUTPUT_DIR')

    # Theta evaluation
    THETA_TRUNCATION_EPS = _float('THETA_TRUNCATION_EPS', 1e-16)
    THETA_MAX_TERMS = _int('THETA_MAX_TERMS', 64)
    TAU_MIN = _float('TAU_MIN', 0.05)
    ZERO_GUARD = _float('ZERO_GUARD', 1e-6)

    # Circular regime
    THETA_GUARD = _float('THETA_GUARD', 1e-8)
    POLYLOG_TOL = _float('POLYLOG_TOL', 1e-15)

    # Towers
    TOWER_MARGIN = _float('TOWER_MARGIN', 0.01)
    TOWER_RESOLUTION = _int('TOWER_RESOLUTION', 32)
    TOWER_MAX_NODES = _int('TOWER_MAX_NODES', 8192)
    TOWER_INTERP_TOL = _float('TOWER_INTERP_TOL', 1e-12)
    QUAD_TOL = _float('QUAD_TOL', 1e-12)

    # Phase tracking
    PHASE_MAX_STEP = _float('PHASE_MAX_STEP', math.pi / 2)
    PHASE_MAX_DEPTH = _int('PHASE_MAX_DEPTH', 40)

    # Verification
    SUITE_SEED = _int('SUITE_SEED', 20240611)

    # Directories
    BASE_DIR = BASE_DIR
    DOCS_DIR = BASE_DIR / 'docs'

    @classmethod
    def validate(cls):
        """Validate numerical settings"""
        positive_vars = [
            'THETA_TRUNCATION_EPS',
            'TAU_MIN',
            'ZERO_GUARD',
            'THETA_GUARD',
            'POLYLOG_TOL',
            'TOWER_MARGIN',
            'TOWER_INTERP_TOL',
            'QUAD_TOL',
            'PHASE_MAX_STEP',
        ]

        invalid_vars = [var for var in positive_vars if not getattr(cls, var) > 0]

        if cls.THETA_MAX_TERMS < 4:
            invalid_vars.append('THETA_MAX_TERMS')
        if cls.TOWER_RESOLUTION < 16:
            invalid_vars.append('TOWER_RESOLUTION')
        if cls.TOWER_MAX_NODES < cls.TOWER_RESOLUTION:
            invalid_vars.append('TOWER_MAX_NODES')
        if not cls.PHASE_MAX_STEP < math.pi:
            invalid_vars.append('PHASE_MAX_STEP')

        if invalid_vars:
            raise ValueError(f"Invalid numerical settings: {', '.join(invalid_vars)}")

    @classmethod
    def output_path(cls, name: str) -> Path:
        """Resolve an output file name against the default output directory"""
        path = Path(name)
        if path.is_absolute() or not cls.OUTPUT_DIR:
            return path
        return Path(cls.OUTPUT_DIR) / path


# Create settings instance
settings = Settings()
