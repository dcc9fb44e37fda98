import math

import numpy as np
import pytest

from subpsi.cgf import CgfFamily
from subpsi.errors import DomainError, InvalidSpec
from subpsi.sim import (Covariates, ProcessKind, ProcessSpec, checkpoints, covariate_path,
                        coverage_experiment, crossing_path, default_family,
                        degenerate_regressors, floored_norm_sq, generate, lil_ratio_trace)
from subpsi.rng import CounterRNG
from subpsi.vector_bound import VectorBoundaryParams


def test_gaussian_walk():
    tr = generate(ProcessSpec(horizon=500, seed=3))
    assert np.array_equal(tr.V[:, 0, 0], np.arange(1, 501))
    assert np.allclose(tr.S[:, 0], np.cumsum(CounterRNG(3).normal(500)))


def test_determinism_bitwise():
    for kind, d in [(k, 2) for k in ProcessKind]:
        spec = ProcessSpec(kind, d=d, horizon=200, seed=9, covariates="rotating")
        a, b = generate(spec), generate(spec)
        assert np.array_equal(a.S, b.S) and np.array_equal(a.V, b.V)


@pytest.mark.parametrize("kind", list(ProcessKind))
def test_trajectories_consistent(kind):
    spec = ProcessSpec(kind, d=2, horizon=300, seed=1, covariates="sphere")
    tr = generate(spec)
    assert tr.S.shape == (300, 2) and tr.V.shape == (300, 2, 2)
    assert np.allclose(tr.V, tr.V.transpose(0, 2, 1))
    assert np.all(tr.eigenvalues() >= -1e-9)
    # increments of V are PSD
    dV = np.diff(tr.V, axis=0)
    assert np.all(np.linalg.eigvalsh(dV) >= -1e-9)


def test_degenerate_recursion():
    eps = CounterRNG(5).normal(400)
    U = degenerate_regressors(eps)
    assert U[0] == 0.0 and U[1] == pytest.approx(eps[0])
    brute = np.zeros(400)
    for t in range(1, 400):
        brute[t] = brute[:t].mean() + eps[:t].mean()
    assert np.allclose(U, brute, atol=1e-10)


def test_bennett_variance_proxy():
    # E[x x^T] for x uniform in the radius-r ball is r^2 / (d + 2) I
    spec = ProcessSpec(ProcessKind.BOUNDED_BENNETT, d=3, horizon=100_000, seed=2, c=2.0)
    tr = generate(spec)
    emp = tr.X.T @ tr.X / spec.horizon
    assert np.allclose(emp, tr.V[-1] / spec.horizon, atol=0.02)
    assert np.max(np.linalg.norm(tr.X, axis=1)) <= 2.0


def test_bernstein_variance_proxy():
    spec = ProcessSpec(ProcessKind.BERNSTEIN_MOMENT, d=1, horizon=200_000, seed=4, c=0.5)
    tr = generate(spec)
    assert np.var(tr.X[:, 0]) == pytest.approx(2 * 0.25, rel=0.02)
    assert default_family(spec) == CgfFamily.gamma(0.5)


def test_emp_bern_generator_matches_update_rule():
    from subpsi.emp_bernstein import EmpBernState, eb_update
    spec = ProcessSpec(ProcessKind.BOUNDED_EMP_BERN, d=2, horizon=500, seed=8, mean=(0.1, -0.2))
    tr = generate(spec)
    st = EmpBernState(2)
    for x in tr.X:
        eb_update(st, x)
    assert np.allclose(st.emp_var, tr.V[-1])
    assert np.allclose(st.sum_x - 500 * spec.mean_vector(), tr.S[-1])


def test_covariates():
    spec = ProcessSpec(d=3, horizon=100, covariates="cycle")
    W = covariate_path(spec, CounterRNG(0))
    assert np.array_equal(W[:4], np.eye(3)[[0, 1, 2, 0]])
    for mode in ("rotating", "sphere"):
        W = covariate_path(ProcessSpec(d=3, horizon=1000, covariates=mode), CounterRNG(0))
        assert np.allclose(np.linalg.norm(W, axis=1), 1.0)
        assert np.linalg.eigvalsh(W.T @ W)[0] > 50


def test_invalid_specs():
    with pytest.raises(InvalidSpec):
        ProcessSpec(ProcessKind.DEGENERATE_2D, d=3)
    with pytest.raises(InvalidSpec):
        ProcessSpec(ProcessKind.BLOCK_DEGENERATE, d=3)
    with pytest.raises(InvalidSpec):
        ProcessSpec(ProcessKind.BOUNDED_EMP_BERN, d=2, mean=(0.4, 0.4))
    with pytest.raises(InvalidSpec):
        ProcessSpec(horizon=0)
    with pytest.raises(ValueError):
        ProcessSpec(kind="nope")


def test_block_identity_small():
    spec = ProcessSpec(ProcessKind.BLOCK_DEGENERATE, d=4, horizon=2000, seed=6)
    tr = generate(spec)
    full = floored_norm_sq(tr.S, tr.V, 1.0)
    parts = sum(floored_norm_sq(tr.S[:, s], tr.V[:, s, s], 1.0) for s in (slice(0, 2), slice(2, 4)))
    late = slice(10, None)  # floors are inactive once each block has gamma_min >= 1
    assert np.allclose(full[late], parts[late], rtol=1e-8)


def test_coverage_harness_sanity():
    spec = ProcessSpec(horizon=2000, seed=0)
    with pytest.raises(DomainError):
        coverage_experiment(spec, "scalar", n_reps=0)
    loose = coverage_experiment(spec, "scalar", n_reps=200)
    assert loose.passes()
    broken = coverage_experiment(spec, "scalar", n_reps=200, scale=0.2)
    assert broken.rate > 0.5 and not broken.passes()
    again = coverage_experiment(spec, "scalar", n_reps=200, scale=0.2)
    assert again == broken


def test_vector_d1_crossings_below_scalar():
    vp = VectorBoundaryParams()
    spec = ProcessSpec(horizon=3000, seed=100)
    f = CgfFamily.normal()
    for rep in range(100):
        tr = generate(spec.with_seed(100 + rep))
        s_stat, s_bound = crossing_path(tr, "scalar", vp, f, spec, two_sided=True)
        v_stat, v_bound = crossing_path(tr, "vector", vp, f, spec)
        vv = np.maximum(tr.V[:, 0, 0], 1.0)
        assert np.allclose(v_stat * np.sqrt(vv), s_stat)
        if rep == 0:
            assert np.all(v_bound * np.sqrt(vv) >= s_bound)
        assert np.any(v_stat >= v_bound) <= np.any(s_stat >= s_bound)


def test_crossing_path_errors():
    spec = ProcessSpec(d=2, horizon=10)
    with pytest.raises(DomainError):
        crossing_path(generate(spec), "scalar", VectorBoundaryParams(), CgfFamily.normal(), spec)
    with pytest.raises(DomainError):
        crossing_path(generate(spec), "bogus", VectorBoundaryParams(), CgfFamily.normal(), spec)


def test_checkpoints():
    assert checkpoints(10).tolist() == [1, 2, 4, 8, 10]
    assert checkpoints(16).tolist() == [1, 2, 4, 8, 16]


def test_lil_trace_finite():
    tr = lil_ratio_trace(ProcessSpec(horizon=2**14, seed=1))
    assert np.all(np.isfinite(tr.ratio)) and np.all(tr.ratio >= 0)
    deg = lil_ratio_trace(ProcessSpec(ProcessKind.DEGENERATE_2D, d=2, horizon=2**14, seed=1))
    assert deg.log_kappa_over_log_t is not None
    assert np.all(np.isfinite(deg.log_kappa_over_log_t[1:]))
