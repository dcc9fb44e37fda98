"""Time-uniform self-normalized concentration boundaries for sub-psi processes."""
from .cgf import CgfFamily, Kind, RescaledCgf, rescale
from .errors import (
    ConvergenceError,
    DomainError,
    InvalidEllipsoid,
    InvalidSpec,
    MissingBoundError,
    NormError,
    NotSuperGaussianError,
    SingularError,
)

__version__ = "0.1.0"
