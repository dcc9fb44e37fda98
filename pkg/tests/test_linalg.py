import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subpsi.errors import DomainError, SingularError
from subpsi.linalg import (check_symmetric, condition_number, inv_sqrt, log_det, spectral_floor,
                           sqrt_psd, sym_eig)


def random_psd(rng, d, floor=0.0):
    A = rng.normal(size=(d, d))
    return A @ A.T + floor * np.eye(d)


def test_identity_and_diagonal():
    e = sym_eig(np.eye(3))
    assert np.allclose(e.eigenvalues, 1.0)
    e = sym_eig(np.diag([1.0, 4.0]))
    assert np.allclose(e.eigenvalues, [4.0, 1.0])
    assert np.allclose(np.abs(e.eigenvectors), [[0, 1], [1, 0]])


def test_rejects_asymmetric_and_nonsquare():
    with pytest.raises(DomainError):
        check_symmetric(np.array([[1.0, 2.0], [0.0, 1.0]]))
    with pytest.raises(DomainError):
        sym_eig(np.ones((2, 3)))


@pytest.mark.parametrize("d", [1, 2, 5, 12, 40])
def test_reconstruction_orthonormality_and_numpy(d):
    rng = np.random.default_rng(d)
    V = random_psd(rng, d) - 0.5 * d * np.eye(d)  # indefinite is fine too
    e = sym_eig(V)
    Q = e.eigenvectors
    assert np.linalg.norm(e.rebuild() - V) <= 1e-9 * np.linalg.norm(V)
    assert np.linalg.norm(Q.T @ Q - np.eye(d)) <= 1e-10
    assert np.all(np.diff(e.eigenvalues) <= 0)
    assert np.allclose(e.eigenvalues, np.linalg.eigvalsh(V)[::-1], atol=1e-10 * np.abs(V).max())
    lead = np.argmax(np.abs(Q), axis=0)
    assert np.all(Q[lead, np.arange(d)] > 0)


def test_deterministic():
    V = random_psd(np.random.default_rng(3), 6)
    a, b = sym_eig(V), sym_eig(V)
    assert np.array_equal(a.eigenvalues, b.eigenvalues)
    assert np.array_equal(a.eigenvectors, b.eigenvectors)


def test_rank_deficient_and_extreme_scales():
    x = np.array([1.0, 2.0, 3.0])
    e = sym_eig(np.outer(x, x))
    assert e.eigenvalues[0] == pytest.approx(14.0, rel=1e-12)
    assert np.allclose(e.eigenvalues[1:], 0.0, atol=1e-12)
    e = sym_eig(np.diag([1e12, 1e-12]))
    assert e.eigenvalues.tolist() == [1e12, 1e-12]
    assert np.allclose(sym_eig(np.zeros((3, 3))).eigenvalues, 0.0)


def test_spectral_floor_examples():
    V = np.array([[3.0, 1.0], [1.0, 2.5]])
    assert np.allclose(spectral_floor(V, 1.0), V, atol=1e-10)
    assert np.allclose(spectral_floor(np.zeros((3, 3)), 2.0), 2 * np.eye(3))
    assert np.allclose(spectral_floor(np.diag([3.0, 0.5]), 1.0), np.diag([3.0, 1.0]))
    with pytest.raises(DomainError):
        spectral_floor(V, 0.0)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10_000), d=st.integers(1, 5), rho=st.floats(0.01, 10))
def test_floor_properties(seed, d, rho):
    V = random_psd(np.random.default_rng(seed), d)
    F = spectral_floor(V, rho)
    assert np.min(np.linalg.eigvalsh(F - V)) >= -1e-9 * max(1, np.abs(V).max())
    assert np.allclose(spectral_floor(F, rho), F, atol=1e-9 * max(1, np.abs(F).max()))
    assert np.min(np.linalg.eigvalsh(F)) >= rho * (1 - 1e-9)
    assert condition_number(F) <= max(sym_eig(V).gamma_max, rho) / rho * (1 + 1e-9)


def test_inv_sqrt_and_friends():
    assert np.allclose(inv_sqrt(4 * np.eye(2)), 0.5 * np.eye(2))
    assert condition_number(np.eye(4)) == 1.0
    assert condition_number(np.diag([9.0, 1.0])) == pytest.approx(9.0)
    assert condition_number(np.diag([1.0, 0.0])) == np.inf
    assert log_det(np.diag([2.0, 3.0])) == pytest.approx(np.log(6.0))
    assert log_det(np.diag([2.0, 0.0])) == -np.inf
    with pytest.raises(SingularError):
        inv_sqrt(np.diag([1.0, 0.0]))
    V = random_psd(np.random.default_rng(0), 4, floor=0.5)
    R = inv_sqrt(V)
    assert np.linalg.norm(R @ V @ R - np.eye(4)) <= 1e-8
    S = sqrt_psd(V)
    assert np.allclose(S @ S, V)
