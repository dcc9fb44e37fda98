"""
Comparison bounds: the Gaussian mixture (log-det) radius, the scalar
empirical Bernstein boundary for [-1/2, 1/2] data, and the fixed-time AR(1)
tail bound with its union-bounded variant.
"""
import math

import numpy as np

from .cgf import CgfFamily, conjugate_inverse
from .errors import ConvergenceError, DomainError
from .linalg import sym_eig
from .stitching import BoundaryParams, ell, howard_constants, howard_gamma_boundary  # noqa: F401

X_CAP = 1e6
MAX_ITER = 200
_POISSON = CgfFamily.poisson(1.0)


def _check_delta(delta):
    if not 0 < delta < 1:
        raise DomainError("delta must lie in (0, 1)")


def logdet_mixture_radius(V, rho, delta):
    """sqrt(2 log((1/delta) sqrt(det(I + V/rho))))."""
    _check_delta(delta)
    gamma = sym_eig(np.atleast_2d(V)).eigenvalues
    half_logdet = 0.5 * np.sum(np.log1p(np.clip(gamma, 0.0, None) / rho))
    return float(np.sqrt(2 * (math.log(1 / delta) + half_logdet)))


def logdet_regression_radius(V, rho, delta, theta_norm_bound):
    return logdet_mixture_radius(V, rho, delta) + math.sqrt(rho) * theta_norm_bound


def scalar_emp_bernstein_radius(v, p):
    """Two-sided boundary for |S_t| at overall level delta.

    Each tail gets delta/2, so the log budget is ell evaluated at delta/2.
    """
    k1, _ = howard_constants(p.alpha)
    k2 = (math.sqrt(p.alpha) + 1) / math.sqrt(2)
    l = ell(v, p.replace(delta=p.delta / 2))
    vv = np.maximum(v, p.rho)
    out = np.sqrt(k1**2 * vv * l + k2**2 * l**2) + k2 * l
    return float(out) if np.ndim(v) == 0 else out


def bercu_touati_y(x):
    """y_x with psi*_{P,1}(y_x) = x^2."""
    return conjugate_inverse(_POISSON, np.asarray(x, dtype=float) ** 2)


def bercu_touati_tail(x, t):
    """2 exp(-t x^2 / (2 (1 + y_x)))."""
    x = np.asarray(x, dtype=float)
    return 2 * np.exp(-t * x**2 / (2 * (1 + bercu_touati_y(x))))


def bercu_touati_radius(t, delta, rtol=1e-12):
    """The x solving 2 exp(-t x^2 / (2(1 + y_x))) = delta.

    The exponent is increasing in x, so the root is bracketed by doubling
    from x = 1 and then bisected.
    """
    _check_delta(delta)
    if t < 1:
        raise DomainError("t must be at least 1")
    target = math.log(2 / delta)

    def expo(x):
        return t * x**2 / (2 * (1 + float(bercu_touati_y(x))))

    lo, hi = 0.0, 1.0
    while expo(hi) < target:
        lo, hi = hi, 2 * hi
        if hi > X_CAP:
            raise ConvergenceError("root lies beyond the x cap")
    for _ in range(MAX_ITER):
        if hi - lo <= rtol * hi:
            return 0.5 * (lo + hi)
        mid = 0.5 * (lo + hi)
        if expo(mid) < target:
            lo = mid
        else:
            hi = mid
    raise ConvergenceError("bisection did not converge")


def bercu_touati_union_radius(t, delta):
    """Pointwise radius at level 6 delta / (t^2 pi^2), valid for all t at once."""
    return bercu_touati_radius(t, 6 * delta / (t**2 * math.pi**2))
