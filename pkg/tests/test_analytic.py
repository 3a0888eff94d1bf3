from fractions import Fraction

import numpy as np
import pytest

import oracles
from mg1game import ModelParams, analytic


def params(rho, k, mu=1.0, cost=0.0):
    return ModelParams(lam=rho * mu, mu=mu, k_var=k, cost=cost)


HALF = params(0.5, 2.0)  # rho=1/2, exponential-variance service


class TestPremiumWaitPR:
    def test_empty_class_waits_for_nothing(self):
        assert analytic.wait_premium_pr(HALF, 0.0) == 0.0

    def test_half_join(self):
        # K phi rho / (2 mu (1 - phi rho)) = 1/3
        assert analytic.wait_premium_pr(HALF, 0.5) == pytest.approx(Fraction(1, 3), rel=1e-15)

    def test_all_join_equals_single_class_delay(self):
        assert analytic.wait_premium_pr(HALF, 1.0) == pytest.approx(1.0, rel=1e-15)


class TestOrdinaryWaitPR:
    def test_no_premium_collapses_to_single_class(self):
        assert analytic.wait_ordinary_pr(HALF, 0.0) == pytest.approx(1.0, rel=1e-15)

    def test_half_join(self):
        assert analytic.wait_ordinary_pr(HALF, 0.5) == pytest.approx(Fraction(5, 3), rel=1e-15)

    def test_tagged_customer_limit_at_phi_one(self):
        assert analytic.wait_ordinary_pr(HALF, 1.0) == pytest.approx(3.0, rel=1e-15)


class TestCostGapPR:
    def test_endpoint(self):
        assert analytic.cost_gap_pr(HALF, 0.0) == pytest.approx(1.0, rel=1e-15)

    def test_half_join(self):
        assert analytic.cost_gap_pr(HALF, 0.5) == pytest.approx(Fraction(4, 3), rel=1e-15)

    def test_high_variance_point(self):
        p = params(0.25, 4.0)
        assert analytic.cost_gap_pr(p, 2.0 / 3.0) == pytest.approx(0.6, rel=1e-14)

    def test_strictly_positive(self):
        rng = np.random.default_rng(7)
        for _ in range(300):
            p = params(rng.uniform(0.01, 0.99), rng.uniform(1.0, 30.0))
            assert analytic.cost_gap_pr(p, rng.uniform(0.0, 1.0)) > 0.0


class TestAvgWaitPR:
    def test_pure_states(self):
        assert analytic.avg_wait_pr(HALF, 0.0) == pytest.approx(1.0, rel=1e-15)
        assert analytic.avg_wait_pr(HALF, 1.0) == pytest.approx(1.0, rel=1e-12)

    def test_interior_low_variance(self):
        p = params(0.75, 1.0)
        assert analytic.avg_wait_pr(p, 2.0 / 3.0) == pytest.approx(Fraction(5, 3), rel=1e-14)


class TestNonPreemptive:
    def test_premium_sees_residual_work(self):
        assert analytic.wait_premium_np(HALF, 0.0) == pytest.approx(0.5, rel=1e-15)

    def test_ordinary_single_class(self):
        assert analytic.wait_ordinary_np(HALF, 0.0) == pytest.approx(1.0, rel=1e-15)

    def test_premium_all_join(self):
        assert analytic.wait_premium_np(HALF, 1.0) == pytest.approx(1.0, rel=1e-15)

    def test_gap_endpoints(self):
        assert analytic.cost_gap_np(HALF, 0.0) == pytest.approx(0.5, rel=1e-15)
        assert analytic.cost_gap_np(HALF, 1.0) == pytest.approx(1.0, rel=1e-15)

    def test_gap_endpoint_ratio_is_load_factor(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            p = params(rng.uniform(0.05, 0.95), rng.uniform(1.0, 20.0))
            ratio = analytic.cost_gap_np(p, 1.0) / analytic.cost_gap_np(p, 0.0)
            assert ratio == pytest.approx(1.0 / (1.0 - p.rho), rel=1e-12)

    def test_average_is_constant_in_phi(self):
        assert analytic.avg_wait_np(HALF, 0.1) == pytest.approx(1.0, rel=1e-15)
        assert analytic.avg_wait_np(params(0.75, 1.0), 0.9) == pytest.approx(1.5, rel=1e-15)
        p = params(0.6, 3.7)
        assert analytic.avg_wait_np(p, 0.123) == analytic.avg_wait_np(p, 0.987)


def test_matches_exact_rational_oracle():
    """Direct gap/average forms agree with exact fraction arithmetic."""
    for k in (Fraction(1), Fraction(3, 2), Fraction(2), Fraction(7, 2), Fraction(10)):
        for rho in (Fraction(1, 20), Fraction(1, 2), Fraction(9, 10)):
            for phi in (Fraction(0), Fraction(1, 3), Fraction(4, 5), Fraction(1)):
                for mu in (Fraction(1, 2), Fraction(2)):
                    p = params(float(rho), float(k), mu=float(mu))
                    assert analytic.cost_gap_pr(p, float(phi)) == pytest.approx(
                        oracles.gap_pr(k, rho, mu, phi), rel=1e-13
                    )
                    assert analytic.avg_wait_pr(p, float(phi)) == pytest.approx(
                        oracles.avg_pr(k, rho, mu, phi), rel=1e-13
                    )
                    assert analytic.cost_gap_np(p, float(phi)) == pytest.approx(
                        oracles.gap_np(k, rho, mu, phi), rel=1e-13
                    )
                    assert analytic.avg_wait_np(p, float(phi)) == pytest.approx(
                        oracles.avg_np(k, rho, mu), rel=1e-13
                    )


def _dense_grid():
    for rho in np.linspace(0.05, 0.95, 20):
        for k in np.linspace(1.0, 10.0, 20):
            yield params(rho, k)


def test_identity_gap_pins_per_class_forms():
    for p in _dense_grid():
        for phi in np.linspace(0.0, 1.0, 20):
            gap = analytic.cost_gap_pr(p, phi)
            diff = analytic.wait_ordinary_pr(p, phi) - analytic.wait_premium_pr(p, phi)
            assert abs(diff - gap) <= 1e-12 * max(1.0, gap)


def test_identity_average_pins_per_class_forms():
    for p in _dense_grid():
        for phi in np.linspace(0.0, 1.0, 20):
            avg = analytic.avg_wait_pr(p, phi)
            mix = phi * analytic.wait_premium_pr(p, phi) + (1 - phi) * analytic.wait_ordinary_pr(p, phi)
            assert abs(mix - avg) <= 1e-12 * max(1.0, avg)


def test_work_conservation_symmetry():
    for p in _dense_grid():
        ref = p.k_var * p.rho / (2.0 * p.mu * (1.0 - p.rho))
        assert analytic.avg_wait_pr(p, 0.0) == pytest.approx(ref, rel=1e-12)
        assert analytic.avg_wait_pr(p, 1.0) == pytest.approx(ref, rel=1e-12)
        assert analytic.avg_wait_np(p, 0.42) == pytest.approx(ref, rel=1e-12)


def test_slope_sign_law_by_finite_differences():
    """dC/dphi keeps the sign of (2-K) + 2 rho (K-1) across phi."""
    h = 1e-7
    for p in _dense_grid():
        indicator = (2.0 - p.k_var) + 2.0 * p.rho * (p.k_var - 1.0)
        for phi in (0.1, 0.5, 0.9):
            fd = analytic.cost_gap_pr(p, phi + h) - analytic.cost_gap_pr(p, phi - h)
            if abs(indicator) > 1e-9:
                assert fd * indicator > 0.0, (p.rho, p.k_var, phi)


def test_np_gap_strictly_increasing():
    h = 1e-7
    for p in _dense_grid():
        for phi in (0.1, 0.5, 0.9):
            assert analytic.cost_gap_np(p, phi + h) > analytic.cost_gap_np(p, phi - h)


def test_priority_never_hurts():
    rng = np.random.default_rng(3)
    for _ in range(500):
        p = params(rng.uniform(0.01, 0.99), rng.uniform(1.0, 50.0))
        phi = rng.uniform(0.0, 1.0)
        assert analytic.wait_premium_pr(p, phi) <= analytic.wait_ordinary_pr(p, phi)
        assert analytic.wait_premium_np(p, phi) <= analytic.wait_ordinary_np(p, phi)


def test_waits_record_is_consistent():
    for disc in ("pr", "np"):
        w = analytic.waits(HALF, 0.3, disc)
        mixed = 0.3 * w.premium + 0.7 * w.ordinary
        assert w.average == pytest.approx(mixed, rel=1e-12)


def test_phi_out_of_range_rejected():
    for phi in (-0.1, 1.1):
        with pytest.raises(ValueError):
            analytic.wait_premium_pr(HALF, phi)
    with pytest.raises(ValueError):
        analytic.waits(HALF, 0.5, "fifo")
