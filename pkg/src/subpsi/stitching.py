"""
Scalar stitched boundaries.

``scalar_boundary`` is the closed-form curve obtained by union bounding
optimized line crossings over geometric epochs of intrinsic time.
``epoch_line_boundary`` keeps the individual lines and takes their minimum.
``howard_gamma_boundary`` is the sub-Gamma stitched curve used for comparison.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from .cgf import conjugate_inverse, slope_transform
from .errors import DomainError


def riemann_zeta(s, n_terms=50):
    """zeta(s) for real s > 1 by direct summation plus an Euler-Maclaurin tail."""
    if not s > 1:
        raise DomainError("zeta needs s > 1")
    n = np.arange(1, n_terms, dtype=float)
    head = float(np.sum(n**-s))
    N = float(n_terms)
    tail = N ** (1 - s) / (s - 1) + 0.5 * N**-s
    # Bernoulli corrections B2/2!, B4/4!, B6/6! with rising factorials of s
    tail += s * N ** (-s - 1) / 12
    tail -= s * (s + 1) * (s + 2) * N ** (-s - 3) / 720
    tail += s * (s + 1) * (s + 2) * (s + 3) * (s + 4) * N ** (-s - 5) / 30240
    return head + tail


@dataclass(frozen=True)
class StitchFn:
    """h(k) = (k + 1)^s zeta(s); the reciprocals sum to one over k = 0, 1, ..."""

    s: float = 2.0
    zeta_s: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "zeta_s", riemann_zeta(self.s))

    def log_h(self, k):
        return self.s * np.log1p(k) + math.log(self.zeta_s)

    def __call__(self, k):
        return np.exp(self.log_h(k))


@dataclass(frozen=True)
class BoundaryParams:
    alpha: float = 1.05
    rho: float = 1.0
    delta: float = 0.05
    stitch: StitchFn = field(default_factory=StitchFn)

    def __post_init__(self):
        if not self.alpha > 1:
            raise DomainError(f"alpha must exceed 1, got {self.alpha}")
        if not self.rho > 0:
            raise DomainError(f"rho must be positive, got {self.rho}")
        if not 0 < self.delta < 1:
            raise DomainError(f"delta must lie in (0, 1), got {self.delta}")

    def replace(self, **kw):
        vals = dict(alpha=self.alpha, rho=self.rho, delta=self.delta, stitch=self.stitch)
        vals.update(kw)
        return BoundaryParams(**vals)


def _pack(x, like):
    return float(x) if np.ndim(like) == 0 else x


def _floor_v(v, rho):
    v = np.asarray(v, dtype=float)
    if np.any(v < 0):
        raise DomainError("v must be nonnegative")
    return np.maximum(v, rho)


def ell(v, p):
    """log h(log_alpha((v v rho)/rho)) + log(1/delta)."""
    vv = _floor_v(v, p.rho)
    k = np.log(vv / p.rho) / math.log(p.alpha)
    return _pack(p.stitch.log_h(k) - math.log(p.delta), v)


def scalar_boundary(v, f, p):
    vv = _floor_v(v, p.rho)
    out = vv * conjugate_inverse(f, p.alpha * ell(vv, p) / vv)
    return _pack(out, v)


def epoch_lines(f, p, k_max):
    """Anchors (m_k, x_k) and slopes of the per-epoch lines, k = 0..k_max (rho = 1)."""
    k = np.arange(k_max + 1, dtype=float)
    m = p.alpha**k
    x = m * conjugate_inverse(f, (p.stitch.log_h(k) - math.log(p.delta)) / m)
    slope = slope_transform(f, x / m)
    return m, x, slope


def epoch_line_boundary(v, f, p, k_max=None):
    """min_k x_k + s(x_k/m_k)(v - m_k) in the unit-rho normalization."""
    if p.rho != 1:
        raise DomainError("epoch lines are defined for rho = 1; rescale first")
    v_arr = np.atleast_1d(np.asarray(v, dtype=float))
    if np.any(v_arr < 1):
        raise DomainError("epoch lines need v >= 1")
    own_kmax = np.ceil(np.log(v_arr) / math.log(p.alpha)).astype(int) + 5
    if k_max is not None:
        if np.any(k_max < own_kmax - 5):
            raise DomainError("k_max must be at least ceil(log_alpha v)")
        own_kmax = np.full_like(own_kmax, int(k_max))
    m, x, slope = epoch_lines(f, p, int(own_kmax.max()))
    g = x[:, None] + slope[:, None] * (v_arr[None, :] - m[:, None])
    k = np.arange(len(m))[:, None]
    g = np.where(k <= own_kmax[None, :], g, np.inf)
    out = g.min(axis=0)
    return float(out[0]) if np.ndim(v) == 0 else out


def howard_constants(alpha):
    k1 = (alpha**0.25 + alpha**-0.25) / math.sqrt(2)
    k2 = (math.sqrt(alpha) + 1) / 2
    return k1, k2


def howard_gamma_boundary(v, c, p):
    """sqrt(k1^2 (v v rho) l + c^2 k2^2 l^2) + c k2 l for sub-Gamma processes."""
    if c < 0:
        raise DomainError("c must be nonnegative")
    vv = _floor_v(v, p.rho)
    k1, k2 = howard_constants(p.alpha)
    l = ell(vv, p)
    out = np.sqrt(k1**2 * vv * l + (c * k2 * l) ** 2) + c * k2 * l
    return _pack(out, v)
