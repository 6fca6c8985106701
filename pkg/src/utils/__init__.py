from .errors import (
    BranchError,
    ConfigError,
    DegenerateFitError,
    DomainError,
    HierarchyError,
    NearZeroError,
    QuadratureError,
    ResolutionError,
    TruncationError,
)

__all__ = [
    'BranchError',
    'ConfigError',
    'DegenerateFitError',
    'DomainError',
    'HierarchyError',
    'NearZeroError',
    'QuadratureError',
    'ResolutionError',
    'TruncationError',
]
