"""
Time-uniform boundary for the self-normalized norm of a vector process.

The log-budget ``L_rho`` adds to the scalar stitching budget a union bound
over condition-number epochs (spacing beta) and over an epsilon-cover of the
sphere whose mesh shrinks with sqrt(kappa).
"""
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.special import gammaln

from .cgf import conjugate_inverse, is_super_gaussian
from .errors import DomainError, NotSuperGaussianError
from .linalg import SymEigen, check_symmetric, sym_eig
from .stitching import BoundaryParams, StitchFn

GOLDEN = (math.sqrt(5) - 1) / 2


class CoverBound(Enum):
    SIMPLE = "simple"  # (3/eps)^d
    FACE = "face"  # C_d (3/eps)^(d-1)


@dataclass(frozen=True)
class VectorBoundaryParams:
    base: BoundaryParams = field(default_factory=BoundaryParams)
    beta: float = 2.0
    epsilon: float = 0.5
    cover_bound: CoverBound = CoverBound.FACE

    def __post_init__(self):
        if not self.beta > 1:
            raise DomainError(f"beta must exceed 1, got {self.beta}")
        if not 0 < self.epsilon < 1:
            raise DomainError(f"epsilon must lie in (0, 1), got {self.epsilon}")

    @classmethod
    def make(cls, alpha=1.05, rho=1.0, delta=0.05, s=2.0, beta=2.0, epsilon=0.5,
             cover_bound=CoverBound.FACE):
        base = BoundaryParams(alpha=alpha, rho=rho, delta=delta, stitch=StitchFn(s))
        return cls(base, beta, epsilon, CoverBound(cover_bound))

    @property
    def rho(self):
        return self.base.rho


def log_face_constant(d):
    """log C_d with C_d = 2d * 2^(d-1) * Gamma((d-1)/2 + 1) / pi^((d-1)/2)."""
    m = d - 1
    return math.log(2 * d) + m * math.log(2) + gammaln(m / 2 + 1) - (m / 2) * math.log(math.pi)


def log_covering_number_bound(d, eps, mode=CoverBound.FACE):
    if d < 1 or int(d) != d:
        raise DomainError("dimension must be a positive integer")
    eps = np.asarray(eps, dtype=float)
    if np.any(eps <= 0) or np.any(eps >= 1):
        raise DomainError("eps must lie in (0, 1)")
    mode = CoverBound(mode)
    if mode is CoverBound.SIMPLE:
        return d * np.log(3 / eps)
    return log_face_constant(d) + (d - 1) * np.log(3 / eps)


def covering_number_bound(d, eps, mode=CoverBound.FACE):
    out = np.exp(log_covering_number_bound(d, eps, mode))
    return float(out) if np.ndim(eps) == 0 else out


def _spectrum(V):
    if isinstance(V, SymEigen):
        return V.eigenvalues
    V = np.asarray(V, dtype=float)
    if V.ndim == 0:
        return V.reshape(1)
    return sym_eig(check_symmetric(V)).eigenvalues


def L_rho_from_spectrum(eigs, p):
    """L_rho on eigenvalue arrays of shape (..., d); returns shape (...)."""
    eigs = np.asarray(eigs, dtype=float)
    d = eigs.shape[-1]
    b = p.base
    floored = np.maximum(eigs, b.rho)
    gmax, gmin = floored.max(axis=-1), floored.min(axis=-1)
    root_kappa = np.sqrt(gmax / gmin)
    k = np.log(gmax / b.rho) / math.log(b.alpha)
    out = b.stitch.log_h(k) - math.log(b.delta * (1 - 1 / p.beta))
    out = out + np.log(p.beta * root_kappa)
    mesh = p.epsilon / (p.beta * root_kappa)
    out = out + log_covering_number_bound(d, mesh, p.cover_bound)
    return out


def L_rho(V, p):
    return float(L_rho_from_spectrum(_spectrum(V), p))


def radius_from_spectrum(eigs, f, p):
    """Closed-form radius for super-Gaussian f on eigenvalue arrays (..., d)."""
    eigs = np.asarray(eigs, dtype=float)
    gmin = np.maximum(eigs, p.rho).min(axis=-1)
    L = L_rho_from_spectrum(eigs, p)
    return np.sqrt(gmin) / (1 - p.epsilon) * conjugate_inverse(f, p.base.alpha * L / gmin)


def vector_boundary(V, f, p):
    if not is_super_gaussian(f):
        raise NotSuperGaussianError("use general_vector_boundary for this psi")
    return float(radius_from_spectrum(_spectrum(V), f, p))


def general_vector_boundary(V, f, p, tol=1e-10):
    """sup over x in [gamma_min, gamma_max] of sqrt(x) (psi*)^{-1}(alpha L / x), over (1 - eps)."""
    eigs = np.maximum(_spectrum(V), p.rho)
    L = L_rho_from_spectrum(eigs, p)
    a = p.base.alpha

    def g(x):
        return math.sqrt(x) * float(conjugate_inverse(f, a * L / x))

    lo, hi = float(eigs.min()), float(eigs.max())
    best = max(g(lo), g(hi))
    if hi > lo * (1 + 1e-12):
        x1 = hi - GOLDEN * (hi - lo)
        x2 = lo + GOLDEN * (hi - lo)
        g1, g2 = g(x1), g(x2)
        while hi - lo > tol * hi:
            if g1 >= g2:
                hi, x2, g2 = x2, x1, g1
                x1 = hi - GOLDEN * (hi - lo)
                g1 = g(x1)
            else:
                lo, x1, g1 = x1, x2, g2
                x2 = lo + GOLDEN * (hi - lo)
                g2 = g(x2)
        best = max(best, g1, g2)
    return best / (1 - p.epsilon)


def self_normalized_norm(S, V, rho):
    """||(V v rho I)^{-1/2} S||."""
    S = np.atleast_1d(np.asarray(S, dtype=float))
    V = np.atleast_2d(np.asarray(V, dtype=float))
    if V.shape != (S.size, S.size):
        raise DomainError(f"shape mismatch: S {S.shape}, V {V.shape}")
    e = sym_eig(V)
    proj = e.eigenvectors.T @ S
    return float(np.sqrt(np.sum(proj**2 / np.maximum(e.eigenvalues, rho))))
