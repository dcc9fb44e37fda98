"""
Seeded generators for sub-psi example processes and Monte Carlo checks of
the time-uniform boundaries (coverage rates and iterated-logarithm ratios).

Every replicate owns its own counter-based stream (seed = base_seed + rep),
so reports are bitwise reproducible and reps could run in any order.
"""
import math
from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np

from .cgf import CgfFamily
from .errors import DomainError, InvalidSpec
from .rng import CounterRNG
from .stitching import scalar_boundary
from .vector_bound import VectorBoundaryParams, radius_from_spectrum

PHI = (1 + math.sqrt(5)) / 2


class ProcessKind(Enum):
    GAUSSIAN_LINEAR = "gaussian_linear"
    BOUNDED_BENNETT = "bounded_bennett"
    BOUNDED_EMP_BERN = "bounded_emp_bern"
    BERNSTEIN_MOMENT = "bernstein_moment"
    CONDITIONALLY_SYMMETRIC = "conditionally_symmetric"
    DEGENERATE_2D = "degenerate_2d"
    BLOCK_DEGENERATE = "block_degenerate"


class Covariates(Enum):
    CONSTANT = "constant"  # e_1 every round
    CYCLE = "cycle"  # e_1, e_2, ..., e_d, e_1, ...
    ROTATING = "rotating"  # deterministic quasi-periodic unit vectors
    SPHERE = "sphere"  # iid uniform on the unit sphere


@dataclass(frozen=True)
class ProcessSpec:
    kind: ProcessKind = ProcessKind.GAUSSIAN_LINEAR
    d: int = 1
    horizon: int = 1000
    seed: int = 0
    covariates: Covariates = Covariates.CONSTANT
    noise_scale: float = 1.0
    c: float = 1.0
    spread: float = 1.0
    mean: tuple = None
    theta: tuple = None

    def __post_init__(self):
        object.__setattr__(self, "kind", ProcessKind(self.kind))
        object.__setattr__(self, "covariates", Covariates(self.covariates))
        if self.d < 1 or self.horizon < 1:
            raise InvalidSpec("need d >= 1 and horizon >= 1")
        if self.kind is ProcessKind.DEGENERATE_2D and self.d != 2:
            raise InvalidSpec("the degenerate regression process lives in d = 2")
        if self.kind is ProcessKind.BLOCK_DEGENERATE and self.d % 2:
            raise InvalidSpec("block construction needs even d")
        if self.kind is ProcessKind.BOUNDED_EMP_BERN:
            if not 0 < self.spread <= 1:
                raise InvalidSpec("spread must lie in (0, 1]")
            if np.linalg.norm(self.mean_vector()) >= 0.5:
                raise InvalidSpec("mean must lie strictly inside the 1/2-ball")
        for name in ("noise_scale", "c"):
            if not getattr(self, name) > 0:
                raise InvalidSpec(f"{name} must be positive")

    def mean_vector(self):
        return np.zeros(self.d) if self.mean is None else np.asarray(self.mean, dtype=float)

    def theta_vector(self):
        if self.theta is None:
            return np.ones(self.d) / math.sqrt(self.d)
        return np.asarray(self.theta, dtype=float)

    def with_seed(self, seed):
        return replace(self, seed=seed)


def default_family(spec):
    k = spec.kind
    if k is ProcessKind.BOUNDED_BENNETT:
        return CgfFamily.poisson(spec.c * spec.spread)
    if k is ProcessKind.BERNSTEIN_MOMENT:
        return CgfFamily.gamma(spec.c)
    if k is ProcessKind.BOUNDED_EMP_BERN:
        return CgfFamily.exponential(1.0)
    return CgfFamily.normal()


@dataclass
class Trajectory:
    """S[t-1], V[t-1] hold (S_t, V_t) for t = 1..horizon."""

    S: np.ndarray
    V: np.ndarray
    X: np.ndarray
    noise: np.ndarray = field(default=None)

    @property
    def horizon(self):
        return self.S.shape[0]

    def eigenvalues(self):
        return np.linalg.eigvalsh(self.V)[..., ::-1]


def _outer_cumsum(X):
    return np.cumsum(X[:, :, None] * X[:, None, :], axis=0)


def _unit_ball(rng, T, d):
    g = rng.normal((T, d))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    return g * rng.uniform((T, 1)) ** (1.0 / d)


def covariate_path(spec, rng):
    T, d = spec.horizon, spec.d
    t = np.arange(1, T + 1)
    mode = spec.covariates
    if mode is Covariates.CONSTANT:
        W = np.zeros((T, d))
        W[:, 0] = 1.0
        return W
    if mode is Covariates.CYCLE:
        return np.eye(d)[(t - 1) % d]
    if mode is Covariates.ROTATING:
        freq = ((np.arange(1, d + 1) * PHI) % 1.0)[None, :]
        phase = (np.arange(d) / d)[None, :]
        W = np.cos(2 * np.pi * ((t[:, None] * freq) % 1.0 + phase))
        W[:, 0] += 0.5  # keeps the norm away from zero
        return W / np.linalg.norm(W, axis=1, keepdims=True)
    g = rng.normal((T, d))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def degenerate_regressors(eps):
    """U_1 = 0 and U_{t+1} = mean(U_1..U_t) + mean(eps_1..eps_t), vectorized.

    With E_t the partial sums of eps, mean(U_1..U_{t+1}) equals
    mean(U_1..U_t) + E_t / (t (t + 1)), which gives a closed cumulative form.
    """
    T = eps.shape[0]
    E = np.cumsum(eps)
    s = np.arange(1, T + 1, dtype=float)
    ubar = np.concatenate([[0.0], np.cumsum(E / (s * (s + 1)))])[:T]
    U = np.zeros(T)
    U[1:] = ubar[: T - 1] + E[: T - 1] / s[: T - 1]
    return U


def generate(spec):
    rng = CounterRNG(spec.seed)
    T, d, k = spec.horizon, spec.d, spec.kind

    if k is ProcessKind.GAUSSIAN_LINEAR:
        W = covariate_path(spec, rng)
        eps = spec.noise_scale * rng.normal(T)
        S = np.cumsum(eps[:, None] * W, axis=0)
        return Trajectory(S, spec.noise_scale**2 * _outer_cumsum(W), W, eps)

    if k is ProcessKind.CONDITIONALLY_SYMMETRIC:
        W = covariate_path(spec, rng)
        inc = (rng.rademacher(T) * rng.cauchy_magnitude(T))[:, None] * W
        return Trajectory(np.cumsum(inc, axis=0), _outer_cumsum(inc), inc)

    if k is ProcessKind.BOUNDED_BENNETT:
        r = spec.c * spec.spread
        inc = r * _unit_ball(rng, T, d)
        t = np.arange(1, T + 1, dtype=float)
        V = (r**2 / (d + 2)) * t[:, None, None] * np.eye(d)[None]
        return Trajectory(np.cumsum(inc, axis=0), V, inc)

    if k is ProcessKind.BERNSTEIN_MOMENT:
        # Laplace with scale c satisfies the Bernstein moment condition at c
        W = covariate_path(spec, rng)
        lap = spec.c * rng.rademacher(T) * rng.exponential(T)
        inc = lap[:, None] * W
        return Trajectory(np.cumsum(inc, axis=0), 2 * spec.c**2 * _outer_cumsum(W), inc)

    if k is ProcessKind.BOUNDED_EMP_BERN:
        mu = spec.mean_vector()
        radius = spec.spread * (0.5 - np.linalg.norm(mu))
        x = mu + radius * _unit_ball(rng, T, d)
        csum = np.cumsum(x, axis=0)
        t = np.arange(1, T + 1, dtype=float)[:, None]
        prev_mean = np.vstack([np.zeros((1, d)), (csum / t)[:-1]])
        return Trajectory(csum - t * mu, _outer_cumsum(x - prev_mean), x)

    if k is ProcessKind.DEGENERATE_2D:
        eps = rng.normal(T)
        X = np.column_stack([np.ones(T), degenerate_regressors(eps)])
        return Trajectory(np.cumsum(eps[:, None] * X, axis=0), _outer_cumsum(X), X, eps)

    # block construction: d/2 independent copies of the 2-d process
    m = d // 2
    eps = rng.normal((T, m))
    S = np.zeros((T, d))
    V = np.zeros((T, d, d))
    X = np.zeros((T, d))
    for b in range(m):
        Xb = np.column_stack([np.ones(T), degenerate_regressors(eps[:, b])])
        sl = slice(2 * b, 2 * b + 2)
        X[:, sl] = Xb
        S[:, sl] = np.cumsum(eps[:, b, None] * Xb, axis=0)
        V[:, sl, sl] = _outer_cumsum(Xb)
    return Trajectory(S, V, X, eps)


def floored_norm_sq(S, V, rho):
    """||(V v rho I)^{-1/2} S||^2 for stacked (T, d) and (T, d, d)."""
    if S.shape[-1] == 1:
        return S[..., 0] ** 2 / np.maximum(V[..., 0, 0], rho)
    gam, Q = np.linalg.eigh(V)
    proj = np.einsum("tij,ti->tj", Q, S)
    return np.sum(proj**2 / np.maximum(gam, rho), axis=-1)


@dataclass(frozen=True)
class CoverageReport:
    crossings: int
    n_reps: int
    delta: float

    @property
    def rate(self):
        return self.crossings / self.n_reps

    @property
    def std_err(self):
        r = self.rate
        return math.sqrt(r * (1 - r) / self.n_reps)

    def threshold(self, k=3.0):
        """delta plus k binomial standard errors evaluated at delta."""
        return self.delta + k * math.sqrt(self.delta * (1 - self.delta) / self.n_reps)

    def passes(self, k=3.0):
        return self.rate <= self.threshold(k)


BOUNDARY_KINDS = ("scalar", "vector", "regression", "empbern")


def crossing_path(traj, boundary_kind, vp, family, spec, scale=1.0, two_sided=False):
    """Per-round (statistic, boundary) arrays for one trajectory."""
    rho = vp.rho
    if boundary_kind == "scalar":
        if traj.S.shape[1] != 1:
            raise DomainError("scalar boundary needs d = 1")
        v = traj.V[:, 0, 0]
        s = traj.S[:, 0]
        p = vp.base.replace(delta=vp.base.delta / 2) if two_sided else vp.base
        return (np.abs(s) if two_sided else s), scale * scalar_boundary(v, family, p)

    if boundary_kind in ("vector", "empbern"):
        eigs = np.linalg.eigvalsh(traj.V)
        stat = np.sqrt(floored_norm_sq(traj.S, traj.V, rho))
        return stat, scale * radius_from_spectrum(eigs, family, vp)

    if boundary_kind == "regression":
        # (V v rho) theta_hat = V theta* + S, measured in the (V v rho)^{1/2} norm
        theta = spec.theta_vector()
        gam, Q = np.linalg.eigh(traj.V)
        floored = np.maximum(gam, rho)
        b = np.einsum("tij,ti->tj", Q, traj.S + traj.V @ theta)
        th = Q.transpose(0, 2, 1) @ theta
        z = b / floored - th
        stat = np.sqrt(np.sum(floored * z**2, axis=-1))
        extra = np.where(gam[:, 0] < rho, math.sqrt(rho) * np.linalg.norm(theta), 0.0)
        return stat, scale * (radius_from_spectrum(gam, family, vp) + extra)

    raise DomainError(f"unknown boundary kind {boundary_kind!r}; pick from {BOUNDARY_KINDS}")


def coverage_experiment(spec, boundary_kind, params=None, n_reps=1000, family=None,
                        scale=1.0, two_sided=False, min_reps=100):
    """Count replicates whose statistic ever reaches the boundary."""
    if n_reps < min_reps:
        raise DomainError(f"need at least {min_reps} replicates")
    vp = params if params is not None else VectorBoundaryParams()
    family = family if family is not None else default_family(spec)
    crossings = 0
    for rep in range(n_reps):
        traj = generate(spec.with_seed(spec.seed + rep))
        stat, bound = crossing_path(traj, boundary_kind, vp, family, spec, scale, two_sided)
        crossings += bool(np.any(stat >= bound))
    return CoverageReport(crossings, n_reps, vp.base.delta)


def checkpoints(horizon):
    pts = 2 ** np.arange(int(math.log2(horizon)) + 1)
    return np.unique(np.append(pts, horizon))


@dataclass
class LilTrace:
    t: np.ndarray
    ratio: np.ndarray
    norm_sq_over_log_t: np.ndarray = None
    log_kappa_over_log_t: np.ndarray = None


def lil_ratio_trace(spec, rho=1.0):
    """||V^{-1/2} S|| / sqrt(2 log log gamma_max + d log kappa) at powers of two.

    Statistics use V v rho I. Checkpoints whose denominator is not positive
    (gamma_max below e^e-ish territory) are dropped.
    """
    traj = generate(spec)
    t = checkpoints(spec.horizon)
    S, V = traj.S[t - 1], traj.V[t - 1]
    gam = np.maximum(np.linalg.eigvalsh(V), rho)
    gmax, gmin = gam[:, -1], gam[:, 0]
    stat_sq = floored_norm_sq(S, V, rho)
    with np.errstate(invalid="ignore", divide="ignore"):
        denom = 2 * np.log(np.log(gmax)) + spec.d * np.log(gmax / gmin)
    keep = np.isfinite(denom) & (denom > 0)
    out = LilTrace(t[keep], np.sqrt(stat_sq[keep] / denom[keep]))
    if spec.kind in (ProcessKind.DEGENERATE_2D, ProcessKind.BLOCK_DEGENERATE):
        logt = np.log(t[keep].astype(float))
        with np.errstate(divide="ignore"):
            out.norm_sq_over_log_t = stat_sq[keep] / logt
            out.log_kappa_over_log_t = np.log(gmax / gmin)[keep] / logt
    return out
