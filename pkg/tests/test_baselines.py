import math

import numpy as np
import pytest

from subpsi.baselines import (bercu_touati_radius, bercu_touati_tail, bercu_touati_union_radius,
                              bercu_touati_y, howard_gamma_boundary, logdet_mixture_radius,
                              logdet_regression_radius, scalar_emp_bernstein_radius)
from subpsi.cgf import CgfFamily, conjugate
from subpsi.errors import DomainError
from subpsi.stitching import BoundaryParams, howard_constants


def test_logdet_examples():
    assert logdet_mixture_radius(np.zeros((3, 3)), 1.0, 0.05) == pytest.approx(math.sqrt(2 * math.log(20)))
    for d in (1, 3):
        want = math.sqrt(2 * (math.log(20) + d / 2 * math.log(2)))
        assert logdet_mixture_radius(2.0 * np.eye(d), 2.0, 0.05) == pytest.approx(want, rel=1e-13)
    want = math.sqrt(2 * (math.log(20) + 0.5 * math.log(4)))
    assert logdet_mixture_radius(np.diag([6.0, 0.0]), 2.0, 0.05) == pytest.approx(want, rel=1e-13)
    assert logdet_regression_radius(np.diag([6.0, 0.0]), 2.0, 0.05, 3.0) == pytest.approx(
        want + math.sqrt(2) * 3.0, rel=1e-13)
    with pytest.raises(DomainError):
        logdet_mixture_radius(np.eye(2), 1.0, 0.0)


def test_scalar_eb_constants_and_value():
    k1, _ = howard_constants(1.0 + 1e-9)
    assert k1 == pytest.approx(math.sqrt(2), rel=1e-8)
    assert (math.sqrt(1.0 + 1e-9) + 1) / math.sqrt(2) == pytest.approx(math.sqrt(2), rel=1e-8)
    p = BoundaryParams()
    # at v = rho each tail spends delta / 2
    l = math.log(math.pi**2 / 6) + math.log(2 / 0.05)
    k1, _ = howard_constants(1.05)
    k2 = (math.sqrt(1.05) + 1) / math.sqrt(2)
    want = math.sqrt(k1**2 * l + k2**2 * l**2) + k2 * l
    assert scalar_emp_bernstein_radius(1.0, p) == pytest.approx(want, rel=1e-13)
    v = np.logspace(0, 6, 30)
    assert np.all(scalar_emp_bernstein_radius(v, p) >= np.sqrt(k1**2 * v * l))


def test_howard_reexport():
    p = BoundaryParams()
    assert howard_gamma_boundary(5.0, 1.0, p) > howard_gamma_boundary(5.0, 0.0, p)


def test_bercu_inner_identity():
    x = math.sqrt(2 * math.log(2) - 1)
    assert bercu_touati_y(x) == pytest.approx(1.0, abs=1e-12)
    assert conjugate(CgfFamily.poisson(1), 1.0) == pytest.approx(2 * math.log(2) - 1, abs=1e-15)


@pytest.mark.parametrize("t", [1, 10, 100, 1000, 10**5])
@pytest.mark.parametrize("delta", [0.001, 0.01, 0.05, 0.5])
def test_bercu_forward_substitution(t, delta):
    x = bercu_touati_radius(t, delta)
    assert abs(float(bercu_touati_tail(x, t)) - delta) <= 1e-8


def test_bercu_monotone_and_union():
    ts = [10, 100, 1000, 10_000]
    r = [bercu_touati_radius(t, 0.01) for t in ts]
    assert np.all(np.diff(r) < 0)
    assert bercu_touati_radius(100, 0.001) > bercu_touati_radius(100, 0.01)
    for t in ts:
        assert bercu_touati_union_radius(t, 0.01) == pytest.approx(
            bercu_touati_radius(t, 6 * 0.01 / (t**2 * math.pi**2)), rel=1e-14)
        assert bercu_touati_union_radius(t, 0.01) > bercu_touati_radius(t, 0.01)


def test_bercu_errors():
    with pytest.raises(DomainError):
        bercu_touati_radius(0, 0.1)
    with pytest.raises(DomainError):
        bercu_touati_radius(10, 1.5)


def test_bercu_cap():
    from subpsi.errors import ConvergenceError
    # at t = 1 the exponent grows only logarithmically, so tiny delta needs x beyond the cap
    with pytest.raises(ConvergenceError):
        bercu_touati_radius(1, 1e-6)
