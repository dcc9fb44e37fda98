"""
CGF-like functions: the Normal, Exponential, Poisson and Gamma families,
their derivatives, convex conjugates, inverse conjugates and slope transforms.

Every function accepts a scalar or an array and returns the same shape.
A ``RescaledCgf`` may be passed anywhere a ``CgfFamily`` is accepted.
"""
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ._roots import increasing_root
from .errors import DomainError

LAMBDA_CLAMP = 1.0 - 1e-12


class Kind(Enum):
    NORMAL = "normal"
    EXPONENTIAL = "exponential"
    POISSON = "poisson"
    GAMMA = "gamma"


@dataclass(frozen=True)
class CgfFamily:
    kind: Kind
    c: float = 0.0

    def __post_init__(self):
        if self.kind is Kind.NORMAL:
            object.__setattr__(self, "c", 0.0)
        elif not self.c > 0:
            raise DomainError(f"scale c must be positive, got {self.c}")

    @classmethod
    def normal(cls):
        return cls(Kind.NORMAL)

    @classmethod
    def gamma(cls, c=1.0):
        return cls(Kind.GAMMA, float(c))

    @classmethod
    def poisson(cls, c=1.0):
        return cls(Kind.POISSON, float(c))

    @classmethod
    def exponential(cls, c=1.0):
        return cls(Kind.EXPONENTIAL, float(c))

    @classmethod
    def from_name(cls, name, c=1.0):
        kind = Kind(name.lower())
        return cls.normal() if kind is Kind.NORMAL else cls(kind, float(c))

    @property
    def lambda_max(self):
        if self.kind in (Kind.EXPONENTIAL, Kind.GAMMA):
            return 1.0 / self.c
        return np.inf


@dataclass(frozen=True)
class RescaledCgf:
    """psi_rho(lam) = rho * psi(lam / sqrt(rho))."""

    base: CgfFamily
    rho: float

    def __post_init__(self):
        if not self.rho > 0:
            raise DomainError(f"rho must be positive, got {self.rho}")

    @property
    def lambda_max(self):
        return np.sqrt(self.rho) * self.base.lambda_max


def rescale(f, rho):
    if isinstance(f, RescaledCgf):
        return RescaledCgf(f.base, f.rho * rho)
    return RescaledCgf(f, float(rho))


def _pack(x, like):
    return float(x) if np.ndim(like) == 0 else x


def _check_lambda(f, lam):
    lam = np.asarray(lam, dtype=float)
    if np.any(lam < 0) or np.any(lam >= f.lambda_max):
        raise DomainError(f"lambda outside [0, {f.lambda_max})")
    return lam


def _check_nonneg(x, name="argument"):
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise DomainError(f"{name} must be nonnegative")
    return x


# ---- base-family kernels (no checks, arrays in, arrays out) ----

def _psi(f, lam):
    c = f.c
    if f.kind is Kind.NORMAL:
        return lam**2 / 2
    if f.kind is Kind.GAMMA:
        return lam**2 / (2 * (1 - c * lam))
    if f.kind is Kind.POISSON:
        return (np.expm1(c * lam) - c * lam) / c**2
    return (-np.log1p(-c * lam) - c * lam) / c**2


def _psi_prime(f, lam):
    c = f.c
    if f.kind is Kind.NORMAL:
        return lam.copy()
    if f.kind is Kind.GAMMA:
        return ((1 - c * lam) ** -2 - 1) / (2 * c)
    if f.kind is Kind.POISSON:
        return np.expm1(c * lam) / c
    return lam / (1 - c * lam)


def _psi_double_prime(f, lam):
    c = f.c
    if f.kind is Kind.NORMAL:
        return np.ones_like(lam)
    if f.kind is Kind.GAMMA:
        return (1 - c * lam) ** -3
    if f.kind is Kind.POISSON:
        return np.exp(c * lam)
    return (1 - c * lam) ** -2


def _conjugate(f, u):
    c = f.c
    if f.kind is Kind.NORMAL:
        return u**2 / 2
    if f.kind is Kind.GAMMA:
        # r solves sqrt(2) r + c r^2 = u, written to avoid cancellation
        r = 2 * u / (np.sqrt(2.0) + np.sqrt(2 + 4 * c * u))
        return r**2
    if f.kind is Kind.POISSON:
        return ((1 + c * u) * np.log1p(c * u) - c * u) / c**2
    return (c * u - np.log1p(c * u)) / c**2


def _conjugate_inverse(f, x):
    c = f.c
    if f.kind is Kind.NORMAL:
        return np.sqrt(2 * x)
    if f.kind is Kind.GAMMA:
        return np.sqrt(2 * x) + c * x
    return increasing_root(lambda u: _conjugate(f, u), x)


def _psi_prime_inverse(f, u):
    # the derivative maps are explicitly invertible for all four families
    c = f.c
    if f.kind is Kind.NORMAL:
        return u.copy()
    if f.kind is Kind.GAMMA:
        return -np.expm1(-0.5 * np.log1p(2 * c * u)) / c
    if f.kind is Kind.POISSON:
        return np.log1p(c * u) / c
    return u / (1 + c * u)


def _psi_inverse(f, x):
    c = f.c
    if f.kind is Kind.NORMAL:
        return np.sqrt(2 * x)
    if f.kind is Kind.GAMMA:
        # positive root of lam^2 + 2 c x lam - 2 x = 0
        return 2 * x / (c * x + np.sqrt(c**2 * x**2 + 2 * x) + 1e-300)
    if f.kind is Kind.POISSON:
        return increasing_root(lambda lam: _psi(f, lam), x)
    # exponential: psi only grows like -log(1 - c lam) near the pole, so solve
    # in z = -log(1 - c lam), where psi = (z - 1 + e^{-z}) / c^2 has no pole
    z = increasing_root(lambda z: (z + np.expm1(-z)) / c**2, x)
    return -np.expm1(-z) / c


def _lift(kernel, scale_in, scale_out):
    """Turn a base kernel into one that also understands RescaledCgf.

    For psi_rho(lam) = rho psi(lam/sqrt(rho)) every transform is the base
    transform with its argument divided by scale_in(rho) and its value
    multiplied by scale_out(rho).
    """

    def run(f, x):
        if isinstance(f, RescaledCgf):
            return scale_out(f.rho) * kernel(f.base, x / scale_in(f.rho))
        return kernel(f, x)

    return run


_sq = np.sqrt
_psi_any = _lift(_psi, _sq, lambda r: r)
_psi_prime_any = _lift(_psi_prime, _sq, _sq)
_psi_double_prime_any = _lift(_psi_double_prime, _sq, lambda r: 1.0)
_conjugate_any = _lift(_conjugate, _sq, lambda r: r)
_conjugate_inverse_any = _lift(_conjugate_inverse, lambda r: r, _sq)
_psi_prime_inverse_any = _lift(_psi_prime_inverse, _sq, _sq)
_psi_inverse_any = _lift(_psi_inverse, lambda r: r, _sq)


def psi(f, lam):
    lam_arr = _check_lambda(f, lam)
    return _pack(_psi_any(f, lam_arr), lam)


def psi_prime(f, lam):
    lam_arr = _check_lambda(f, lam)
    return _pack(_psi_prime_any(f, lam_arr), lam)


def psi_double_prime(f, lam):
    lam_arr = _check_lambda(f, lam)
    return _pack(_psi_double_prime_any(f, lam_arr), lam)


def conjugate(f, u):
    """psi*(u) = sup_lam u lam - psi(lam), in closed form."""
    u_arr = _check_nonneg(u, "u")
    return _pack(_conjugate_any(f, u_arr), u)


def conjugate_inverse(f, x):
    """The u >= 0 with psi*(u) = x."""
    x_arr = _check_nonneg(x, "x")
    return _pack(_conjugate_inverse_any(f, x_arr), x)


def rescaled_conjugate_inverse(r, x):
    """sqrt(rho) * (psi*)^{-1}(x / rho), composed literally."""
    x_arr = _check_nonneg(x, "x")
    out = np.sqrt(r.rho) * conjugate_inverse(r.base, x_arr / r.rho)
    return _pack(out, x)


def psi_prime_inverse(f, u):
    """(psi')^{-1}(u), which is also the derivative of psi* at u."""
    u_arr = _check_nonneg(u, "u")
    return _pack(_psi_prime_inverse_any(f, u_arr), u)


def psi_inverse(f, x):
    x_arr = _check_nonneg(x, "x")
    return _pack(_psi_inverse_any(f, x_arr), x)


def slope_transform(f, u):
    """s(u) = psi(lam*) / lam* with lam* = (psi')^{-1}(u); s(0) = 0."""
    u_arr = _check_nonneg(u, "u")
    lam = _psi_prime_inverse_any(f, u_arr)
    safe = np.where(lam > 0, lam, 1.0)
    out = np.where(lam > 0, _psi_any(f, safe) / safe, 0.0)
    return _pack(out, u)


def _base(f):
    return f.base if isinstance(f, RescaledCgf) else f


def super_gaussian_grid(f, n=100):
    """Check lam psi'(lam) >= 2 psi(lam) on n interior points."""
    lmax = f.lambda_max
    top = 0.99 * lmax if np.isfinite(lmax) else 10.0
    bottom = lmax / 100 if np.isfinite(lmax) else top / 100
    lam = np.linspace(bottom, top, n)
    gap = lam * _psi_prime_any(f, lam) - 2 * _psi_any(f, lam)
    scale = np.maximum(1.0, np.abs(_psi_any(f, lam)))
    return bool(np.all(gap >= -1e-12 * scale))


def is_super_gaussian(f, check=False):
    """All four shipped families are super-Gaussian (so is any rescaling)."""
    flag = _base(f).kind in tuple(Kind)
    if check:
        return flag and super_gaussian_grid(f)
    return flag
