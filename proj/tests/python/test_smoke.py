import math

import numpy as np
import pytest

import orthantmc as om


def test_normal_functions():
    assert om.normal_cdf(0.0) == 0.5
    assert abs(om.normal_pdf(0.0) - 1.0 / math.sqrt(2.0 * math.pi)) < 1e-15
    assert abs(om.normal_quantile(om.normal_cdf(1.0)) - 1.0) < 1e-8
    with pytest.raises(Exception):
        om.normal_quantile(1.0)
    xs = np.linspace(-3, 3, 11)
    np.testing.assert_allclose(om.normal_cdf(xs) + om.normal_cdf(-xs), 1.0, atol=1e-14)


def test_arfima_covariance():
    cov = om.arfima_covariance(0.2, 4)
    assert cov.rho[0] == 1.0
    assert abs(cov.rho[1] - 0.25) < 1e-15
    assert cov.max_lag == 4
    with pytest.raises(Exception):
        om.arfima_covariance(0.6, 4)


def test_sample_paths_shape_and_determinism():
    cov = om.arfima_covariance(0.2, 31)
    batch = om.sample_paths(cov, k=16, n_paths=2000, seed=11)
    arr = batch.to_numpy()
    assert arr.shape == (2000, 16)
    assert batch.method_tag == "davies_harte"
    again = om.sample_paths(cov, k=16, n_paths=2000, seed=11).to_numpy()
    np.testing.assert_array_equal(arr, again)

    lag1 = float(np.mean(arr[:, :-1] * arr[:, 1:]))
    assert abs(lag1 - 0.25) < 0.03


def test_fpt_white_noise_product():
    cov = om.arfima_covariance(0.0, 7)
    boundary = om.Boundary.constant(1.0)
    curve = om.estimate_orthant_fpt(cov, boundary, k_max=5, n_paths=40000, seed=9)
    target = om.normal_cdf(1.0) ** 5
    assert abs(curve.p_hat[5] - target) < 3.0 * curve.std_err[5]
    assert all(a >= b for a, b in zip(curve.p_hat, curve.p_hat[1:]))


def test_genz_identity_case():
    cov = om.arfima_covariance(0.0, 4)
    res = om.genz_estimate(cov, om.Boundary.constant(1.0), k=5)
    assert abs(res.estimate - om.normal_cdf(1.0) ** 5) < 1e-12


def test_ghk_and_slepian_containment():
    cov = om.arfima_covariance(0.2, 19)
    boundary = om.Boundary.constant(1.0)
    ghk = om.ghk_estimate(cov, boundary, k=20, n_draws=20000, seed=4)
    bound = om.slepian_bound(cov, boundary, k=20)
    assert bound.case_tag == "exchangeable"
    assert ghk.estimate - 3.0 * ghk.std_err <= bound.value
    curve = om.estimate_orthant_fpt(cov, boundary, k_max=20, n_paths=20000, seed=4)
    assert abs(curve.p_hat[20] - ghk.estimate) < 3.0 * math.hypot(
        curve.std_err[20], ghk.std_err
    ) + 1e-9


def test_boundary_parse():
    lin = om.Boundary.parse("lin:2,-0.01")
    assert abs(lin.at(40) - 1.6) < 1e-12
    with pytest.raises(Exception):
        om.Boundary.parse("bogus:1")
