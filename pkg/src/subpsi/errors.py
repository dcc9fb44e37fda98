"""Exception types raised across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the function."""


class ConvergenceError(RuntimeError):
    """An iterative solver hit its iteration cap."""


class SingularError(ValueError):
    """A matrix is (numerically) singular where an inverse was required."""


class NotSuperGaussianError(ValueError):
    """The closed-form vector boundary needs a super-Gaussian CGF."""


class MissingBoundError(ValueError):
    """An additive term needs a finite bound on the parameter norm."""


class InvalidEllipsoid(ValueError):
    """Membership was queried on an ellipsoid whose validity condition failed."""


class NormError(ValueError):
    """An observation violates the required norm bound."""


class InvalidSpec(ValueError):
    """A process specification is inconsistent."""
