"""Small dense symmetric linear algebra built on a cyclic Jacobi eigensolver."""
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError, SingularError

MAX_SWEEPS = 100


def check_symmetric(V):
    V = np.asarray(V, dtype=float)
    if V.ndim != 2 or V.shape[0] != V.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {V.shape}")
    scale = max(1.0, float(np.max(np.abs(V), initial=0.0)))
    if np.max(np.abs(V - V.T), initial=0.0) > 1e-12 * scale:
        raise DomainError("matrix is not symmetric")
    return 0.5 * (V + V.T)


@dataclass(frozen=True)
class SymEigen:
    eigenvalues: np.ndarray  # nonincreasing
    eigenvectors: np.ndarray  # columns

    @property
    def gamma_max(self):
        return float(self.eigenvalues[0])

    @property
    def gamma_min(self):
        return float(self.eigenvalues[-1])

    def rebuild(self, values=None):
        vals = self.eigenvalues if values is None else values
        Q = self.eigenvectors
        return (Q * vals) @ Q.T


def _jacobi(A, tol):
    d = A.shape[0]
    Q = np.eye(d)
    offdiag = ~np.eye(d, dtype=bool)
    for _ in range(MAX_SWEEPS):
        off = np.sqrt(np.sum(A[offdiag] ** 2))
        if off <= tol:
            return np.diag(A).copy(), Q
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = A[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (A[q, q] - A[p, p]) / (2 * apq)
                if theta == 0:
                    t = 1.0
                elif abs(theta) > 1e150:
                    t = 1 / (2 * theta)
                else:
                    t = np.sign(theta) / (abs(theta) + np.sqrt(theta**2 + 1))
                cs = 1 / np.sqrt(t**2 + 1)
                sn = t * cs
                # rotate rows and columns p, q
                Ap, Aq = A[:, p].copy(), A[:, q].copy()
                A[:, p] = cs * Ap - sn * Aq
                A[:, q] = sn * Ap + cs * Aq
                Ap, Aq = A[p, :].copy(), A[q, :].copy()
                A[p, :] = cs * Ap - sn * Aq
                A[q, :] = sn * Ap + cs * Aq
                A[p, q] = A[q, p] = 0.0
                Qp, Qq = Q[:, p].copy(), Q[:, q].copy()
                Q[:, p] = cs * Qp - sn * Qq
                Q[:, q] = sn * Qp + cs * Qq
    raise ConvergenceError("Jacobi sweeps exceeded cap")


def sym_eig(V):
    """Eigenpairs of a symmetric matrix, eigenvalues sorted nonincreasing.

    Each eigenvector is signed so that its largest-magnitude entry is positive.
    """
    A = check_symmetric(V).copy()
    tol = 1e-12 * max(np.linalg.norm(A), 1e-300)
    vals, Q = _jacobi(A, tol)
    order = np.argsort(-vals, kind="stable")
    vals, Q = vals[order], Q[:, order]
    lead = np.argmax(np.abs(Q), axis=0)
    signs = np.where(Q[lead, np.arange(Q.shape[1])] < 0, -1.0, 1.0)
    return SymEigen(vals, Q * signs)


def _eig(V):
    return V if isinstance(V, SymEigen) else sym_eig(V)


def spectral_floor(V, rho):
    """V v rho I: eigenvalues replaced by max(gamma, rho)."""
    if not rho > 0:
        raise DomainError("rho must be positive")
    e = _eig(V)
    return e.rebuild(np.maximum(e.eigenvalues, rho))


def inv_sqrt(V):
    e = _eig(V)
    if e.gamma_min <= 1e-14 * max(e.gamma_max, 0.0) or e.gamma_min <= 0:
        raise SingularError("matrix is singular to working precision")
    return e.rebuild(e.eigenvalues**-0.5)


def sqrt_psd(V):
    e = _eig(V)
    return e.rebuild(np.sqrt(np.clip(e.eigenvalues, 0.0, None)))


def condition_number(V):
    e = _eig(V)
    if e.gamma_min <= 0:
        return np.inf
    return e.gamma_max / e.gamma_min


def log_det(V):
    e = _eig(V)
    if e.gamma_min <= 0:
        return -np.inf
    return float(np.sum(np.log(e.eigenvalues)))
