from .series import (
    ClslResiduals,
    GeneratingSlice,
    clsl_residuals,
    eval_generating,
    generating_clsl,
    generating_residual,
)

__all__ = [
    'ClslResiduals',
    'GeneratingSlice',
    'clsl_residuals',
    'eval_generating',
    'generating_clsl',
    'generating_residual',
]
