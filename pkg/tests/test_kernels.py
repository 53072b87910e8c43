import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from meanforge.errors import DomainError
from meanforge.kernels import (
    MODE_TOL,
    f_batch,
    f_kernel,
    f_null_integral,
    h_density,
    lambda_sine_moments,
    p_batch,
    p_kernel,
    q_lambda,
    q_weight,
    rho,
    rho_batch,
)
from meanforge.means import MeanPair
from meanforge.quadrature import integrate_finite
from oracle_values import F_KERNEL, P_KERNEL, RHO

LAMBDAS = (0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99)
S_GRID = (0.001, 0.01, 0.1, 1.0, 10.0, 100.0, 1000.0)


def test_q_weight_examples():
    assert q_weight(0.5) == 0.0
    assert q_weight(0.2) == pytest.approx(1.5, rel=1e-15)
    u = np.array([0.01, 0.3, 0.45])
    assert np.allclose(q_weight(u), np.sqrt(1 / u - 1) - 1 / np.sqrt(1 / u - 1), rtol=1e-14)
    for bad in (0.0, 1.0, -0.1):
        with pytest.raises(DomainError):
            q_weight(bad)


@settings(max_examples=100, deadline=None)
@given(st.floats(min_value=1e-6, max_value=0.5))
def test_q_weight_antisymmetric(u):
    assert q_weight(u) == pytest.approx(-q_weight(1 - u), rel=1e-9, abs=1e-12)


@pytest.mark.parametrize("s", [0.01, 0.1, 1.0, 10.0, 100.0])
def test_rho_forms_agree(s):
    a, b = rho(s), rho(s, form="second")
    assert abs(a.value - b.value) <= 1e-10 * max(1.0, abs(a.value))


@pytest.mark.parametrize("s,expected", sorted(RHO.items()))
def test_rho_reference(s, expected):
    assert rho(s).value == pytest.approx(expected, rel=1e-10)


def test_rho_batch_and_domain():
    vals, _ = rho_batch([0.1, 1.0, 10.0])
    assert np.allclose(vals, [RHO[0.1], RHO[1.0], RHO[10.0]], rtol=1e-10)
    assert np.all(vals > 0)
    with pytest.raises(DomainError):
        rho(0.0)


@pytest.mark.parametrize("lam", LAMBDAS)
def test_f_positive_beyond_error(lam):
    vals, err, _ = f_batch(lam, S_GRID)
    assert np.all(vals > err)


@pytest.mark.parametrize("lam", LAMBDAS)
def test_f_vanishes_at_zero_and_null_integral(lam):
    assert f_kernel(lam, 0.0).value == 0.0
    null = f_null_integral(lam)
    assert abs(null.value) <= 1e-12


@pytest.mark.parametrize("key,expected", sorted(F_KERNEL.items()))
def test_f_reference(key, expected):
    lam, s = key
    assert f_kernel(lam, s).value == pytest.approx(expected, rel=1e-10)


def test_f_domain():
    with pytest.raises(DomainError):
        f_kernel(0.0, 1.0)
    with pytest.raises(DomainError):
        f_kernel(0.5, -1.0)


@pytest.mark.parametrize("lam", [0.2, 0.6])
def test_q_lambda_sign_and_integral(lam):
    assert q_lambda(lam, 0.5 * (1 - lam)) > 0
    assert q_lambda(lam, 1 - 0.5 * lam) < 0
    assert abs(q_lambda(lam, 1 - lam)) < 1e-15
    r = integrate_finite(lambda u, ul, ur: q_lambda(lam, ul), 0.0, 1.0 - lam, distances=True)
    assert r.value > 0


def test_lambda_sine_moments_closed_forms():
    for c in (0.1, 1.0, 7.0):
        j0, j1 = lambda_sine_moments(math.log(c))
        n0 = integrate_finite(lambda l: np.sin(np.pi * l) * c ** l, 0.0, 1.0).value
        n1 = integrate_finite(lambda l: l * np.sin(np.pi * l) * c ** l, 0.0, 1.0).value
        assert j0 == pytest.approx(n0, rel=1e-12)
        assert j1 == pytest.approx(n1, rel=1e-12)


@pytest.mark.parametrize("sigma,expected", sorted(P_KERNEL.items()))
def test_p_reference(sigma, expected):
    vals, _ = p_batch([sigma])
    assert vals[0] == pytest.approx(expected, rel=1e-10)


def test_p_modes_agree():
    sigma = [0.01, 0.1, 1.0, 10.0, 100.0]
    fast, _ = p_batch(sigma, mode="fast")
    direct, _ = p_batch(sigma, mode="direct")
    assert np.max(np.abs(fast - direct)) <= MODE_TOL
    checked, _ = p_batch(sigma, mode="checked")
    assert np.array_equal(checked, fast)


def test_p_kernel_scales_with_gap():
    a = p_kernel(MeanPair(5, 1), 0.25).value
    b = p_kernel(MeanPair(3, 2), 1.0).value
    assert a == pytest.approx(b, rel=1e-14)
    assert a > 0
    with pytest.raises(DomainError):
        p_kernel(MeanPair(1, 2), 1.0)
    with pytest.raises(ValueError):
        p_batch([1.0], mode="bogus")


@pytest.mark.parametrize("alpha", [0.1, 0.5, 0.9])
def test_h_density_total_mass(alpha):
    # the right half folds onto the left: density(alpha, 1 - u) = -density(-alpha, u)
    r = integrate_finite(lambda u, ul, ur: h_density(alpha, ul) - h_density(-alpha, ul),
                         0.0, 0.5, distances=True)
    assert r.value == pytest.approx(alpha, rel=1e-10)
