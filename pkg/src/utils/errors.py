"""
Exception hierarchy shared by all numerical modules
"""


class HierarchyError(Exception):
    """Base class for every error raised by the library"""


class DomainError(HierarchyError, ValueError):
    """An argument lies outside the region where an operation is defined"""


class NearZeroError(DomainError):
    """A point lies within the zero guard of a lattice zero"""


class TruncationError(HierarchyError, ArithmeticError):
    """A series or product did not reach its tail bound within the term budget"""


class BranchError(HierarchyError):
    """A continuous branch of the argument could not be maintained"""


class ResolutionError(HierarchyError):
    """Adaptive interpolation reached its node cap without meeting the tolerance"""


class QuadratureError(HierarchyError):
    """Adaptive quadrature did not reach the requested tolerance"""


class ConfigError(HierarchyError, ValueError):
    """Malformed configuration (unknown suite, bad bounds, ...)"""


class DegenerateFitError(HierarchyError, ValueError):
    """A least-squares line cannot be fitted to the given points"""
