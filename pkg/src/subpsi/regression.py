"""
Online least squares with time-uniform confidence ellipsoids, plus a VAR(p)
adapter that runs one shrinkage regression per output coordinate.

The library does not check that the noise model makes the score process
sub-psi. Two sufficient conditions: the noise is conditionally sub-Gaussian,
or ||X_t|| <= 1 and the noise CGF is bounded by a super-Gaussian psi.
"""
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .cgf import CgfFamily
from .errors import DomainError, InvalidEllipsoid, MissingBoundError
from .linalg import SymEigen, sym_eig
from .vector_bound import vector_boundary


class Variant(Enum):
    SHRINKAGE = "shrinkage"  # shape V v rho I
    RIDGE = "ridge"  # shape V + rho I
    RESTRICTED = "restricted"  # shape V, only once V >= rho I


@dataclass
class RegressionState:
    d: int
    rho: float = 1.0
    theta_norm_bound: float = np.inf
    t: int = 0
    gram: np.ndarray = field(default=None)
    xty: np.ndarray = field(default=None)

    def __post_init__(self):
        if not self.rho > 0:
            raise DomainError("rho must be positive")
        if self.gram is None:
            self.gram = np.zeros((self.d, self.d))
        if self.xty is None:
            self.xty = np.zeros(self.d)

    def update(self, x, y):
        x = np.asarray(x, dtype=float)
        if x.shape != (self.d,):
            raise DomainError(f"expected covariate of length {self.d}, got {x.shape}")
        self.gram += np.outer(x, x)
        self.xty += float(y) * x
        self.t += 1
        return self

    def update_batch(self, X, Y):
        X = np.asarray(X, dtype=float).reshape(-1, self.d)
        self.gram += X.T @ X
        self.xty += X.T @ np.asarray(Y, dtype=float).reshape(-1)
        self.t += X.shape[0]
        return self


def update(state, x, y):
    return state.update(x, y)


def _require_data(state):
    if state.t < 1:
        raise DomainError("no observations yet")


def _solve(eig, values, rhs):
    proj = eig.eigenvectors.T @ rhs
    scale = values[:, None] if proj.ndim == 2 else values
    return eig.eigenvectors @ (proj / scale)


def ls_shrinkage_estimate(state):
    """(V v rho I)^{-1} X^T Y."""
    _require_data(state)
    e = sym_eig(state.gram)
    return _solve(e, np.maximum(e.eigenvalues, state.rho), state.xty)


def ridge_estimate(state):
    """(V + rho I)^{-1} X^T Y."""
    _require_data(state)
    e = sym_eig(state.gram)
    return _solve(e, e.eigenvalues + state.rho, state.xty)


@dataclass(frozen=True)
class ConfidenceEllipsoid:
    """{theta : ||shape^{1/2}(theta - center)|| <= radius}."""

    center: np.ndarray
    shape: np.ndarray
    radius: float
    valid: bool = True

    def statistic(self, theta):
        diff = np.asarray(theta, dtype=float) - self.center
        return float(np.sqrt(max(diff @ self.shape @ diff, 0.0)))

    def contains(self, theta):
        if not self.valid:
            raise InvalidEllipsoid("ellipsoid validity condition fails at this time")
        return self.statistic(theta) <= self.radius


def contains(e, theta):
    return e.contains(theta)


def _additive(state, active):
    if not active:
        return 0.0
    if not np.isfinite(state.theta_norm_bound):
        raise MissingBoundError("a finite bound on ||theta*|| is required here")
    return float(np.sqrt(state.rho) * state.theta_norm_bound)


def confidence_ellipsoid(state, f, vp, variant=Variant.SHRINKAGE):
    _require_data(state)
    variant = Variant(variant)
    if vp.rho != state.rho:
        raise DomainError("state and boundary params disagree on rho")
    e = sym_eig(state.gram)
    gamma = e.eigenvalues

    if variant is Variant.SHRINKAGE:
        floored = np.maximum(gamma, state.rho)
        radius = vector_boundary(e, f, vp) + _additive(state, gamma[-1] < state.rho)
        center = _solve(e, floored, state.xty)
        return ConfidenceEllipsoid(center, e.rebuild(floored), radius)

    if variant is Variant.RIDGE:
        shifted = gamma + state.rho
        radius = vector_boundary(SymEigen(shifted, e.eigenvectors), f, vp)
        radius += _additive(state, True)
        center = _solve(e, shifted, state.xty)
        return ConfidenceEllipsoid(center, e.rebuild(shifted), radius)

    valid = bool(gamma[-1] >= state.rho)
    floored = np.maximum(gamma, state.rho)
    radius = vector_boundary(e, f, vp)
    center = _solve(e, floored, state.xty)
    return ConfidenceEllipsoid(center, state.gram.copy(), radius, valid)


def lag_matrix(history, p):
    """Rows (Y_{j-1}, ..., Y_{j-p}) and targets Y_j for j = p .. n-1."""
    Y = np.asarray(history, dtype=float)
    if Y.ndim == 1:
        Y = Y[:, None]
    n = Y.shape[0]
    if p < 1 or n < p + 1:
        raise DomainError(f"need at least p + 1 = {p + 1} observations, got {n}")
    X = np.hstack([Y[p - lag:n - lag] for lag in range(1, p + 1)])
    return X, Y[p:]


def var_fit(history, p, vp, theta_norm_bound=np.inf):
    """Shrinkage least squares for each row of a VAR(p) coefficient matrix.

    Returns a list of (row estimate, ellipsoid) pairs, one per coordinate.
    All rows share the stacked gram matrix, and the radius is the Normal one.
    """
    X, targets = lag_matrix(history, p)
    rho = vp.rho
    e = sym_eig(X.T @ X)
    floored = np.maximum(e.eigenvalues, rho)
    rows = _solve(e, floored, X.T @ targets).T
    radius = vector_boundary(e, CgfFamily.normal(), vp)
    if e.eigenvalues[-1] < rho:
        if not np.isfinite(theta_norm_bound):
            raise MissingBoundError("a finite bound on the row norm is required here")
        radius += np.sqrt(rho) * theta_norm_bound
    shape = e.rebuild(floored)
    return [(row, ConfidenceEllipsoid(row, shape, radius)) for row in rows]
