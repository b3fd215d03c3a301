import math

import numpy as np
import pytest

import powmean


def test_arithmetic_and_harmonic_means():
    a = np.diag([1.0, 2.0])
    b = np.diag([2.0, 1.0])
    np.testing.assert_allclose(powmean.power_mean(1.0, a, b), (a + b) / 2, atol=1e-14)
    np.testing.assert_allclose(powmean.power_mean(-1.0, a, b), np.diag([4 / 3, 4 / 3]), atol=1e-14)


def test_log_euclidean_commuting_pair():
    m = powmean.power_mean(0.0, np.diag([1.0, 4.0]), np.diag([4.0, 1.0]))
    np.testing.assert_allclose(m, 2 * np.eye(2), atol=1e-13)


def test_duality_matches_numpy_inverse():
    rng = np.random.default_rng(3)
    q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
    a = q @ np.diag([0.5, 1.0, 3.0]) @ q.T
    b = np.diag([2.0, 0.7, 1.1])
    lhs = np.linalg.inv(powmean.power_mean(0.7, a, b))
    rhs = powmean.power_mean(-0.7, np.linalg.inv(a), np.linalg.inv(b))
    np.testing.assert_allclose(lhs, rhs, atol=1e-10)


def test_region_and_classifier():
    assert powmean.in_sufficient_region(1.0, 2.0)
    assert not powmean.in_sufficient_region(0.25, 1.0)
    assert powmean.in_sufficient_region(-2.0, -0.6)
    assert powmean.classify(0.25, 1.0) == "rotated-diagonal"
    assert powmean.classify(0.0, 2.0) == "log-euclidean"
    assert powmean.classify(-2.0, -0.25) == "rotated-diagonal/dual"
    assert powmean.dual(1.0, 2.0) == (-2.0, -1.0)


def test_counterexample_rechecked_with_numpy():
    w = powmean.find_counterexample(-2.0, -0.25)
    assert w["dual_applied"]
    a, b = w["a"], w["b"]

    def mean(p):
        def power(m, r):
            vals, vecs = np.linalg.eigh(m)
            return vecs @ np.diag(vals**r) @ vecs.T

        return power((power(a, p) + power(b, p)) / 2, 1 / p)

    diff = mean(w["q"]) - mean(w["p"])
    assert np.linalg.eigvalsh(diff)[0] < -1e-12
    assert w["neg_eigenvalue"] == pytest.approx(np.linalg.eigvalsh(diff)[0], rel=1e-6)


def test_in_region_point_raises():
    with pytest.raises(powmean.PowmeanError, match="InRegion"):
        powmean.find_counterexample(1.0, 2.0)


def test_projection_coefficient_and_oracle():
    assert powmean.det_coeff_projection(0.25, 0.5) == pytest.approx(-3.7912607e-3, rel=1e-6)
    check = powmean.verify_lemma("projection", 0.25, 0.5)
    assert check["passed"]


def test_choi_signs():
    rows = powmean.choi_sign_table([-2.0, -0.5, 0.5, 1.5, 3.0])
    assert [r[2] for r in rows] == ["-,+", "+,+", "-,-", "+,+", "-,+"]


def test_loewner_witness():
    holds, lam, v = powmean.loewner_leq(np.diag([1.0, 2.0]), np.diag([2.0, 1.0]))
    assert not holds
    assert lam == pytest.approx(-1.0)
    assert math.isclose(abs(v[1]), 1.0)
