import numpy as np
import pytest

from mg1game import ModelParams, analytic, dynamics, equilibrium, errors


def params(rho, k, cost, mu=1.0):
    return ModelParams(lam=rho * mu, mu=mu, k_var=k, cost=cost)


DECREASING = params(0.25, 4.0, cost=0.6)  # unique mixed equilibrium at 2/3
BISTABLE = params(0.5, 2.0, cost=1.5)  # pure states stable, mixed 2/3 not


class TestBestResponse:
    def test_join_when_gap_exceeds_fee(self):
        assert dynamics.best_response(params(0.5, 2.0, 1.0), 0.5) == 1.0

    def test_stay_when_gap_below_fee(self):
        assert dynamics.best_response(params(0.5, 2.0, 2.0), 0.5) == 0.0

    def test_indifferent_at_equilibrium(self):
        phi = 2.0 / 3.0
        assert dynamics.best_response(DECREASING, phi) == phi

    def test_np_discipline(self):
        p = params(0.5, 2.0, 0.8)
        assert dynamics.best_response(p, 0.9, "np") == 1.0  # gap above 0.8 past 0.75
        assert dynamics.best_response(p, 0.5, "np") == 0.0


class TestIterate:
    def test_converges_to_unique_mixed(self):
        traj = dynamics.iterate(DECREASING, 0.1, step_size=0.1)
        assert traj.converged
        assert abs(traj.terminal - 2.0 / 3.0) < 1e-3

    def test_bistable_below_threshold_drains(self):
        traj = dynamics.iterate(BISTABLE, 0.5)
        assert traj.converged and traj.terminal == pytest.approx(0.0, abs=1e-6)

    def test_bistable_above_threshold_fills(self):
        traj = dynamics.iterate(BISTABLE, 0.8)
        assert traj.converged and traj.terminal == pytest.approx(1.0, abs=1e-6)

    def test_equilibria_are_fixed_points(self):
        for p in (DECREASING, BISTABLE):
            eqs = equilibrium.equilibria_pr(p)
            for member in eqs.members():
                traj = dynamics.iterate(p, member)
                assert traj.converged and traj.iterations_used <= 2
                assert all(abs(phi - member) < 1e-8 for _, phi in traj.points)

    def test_decreasing_curve_global_convergence(self):
        for phi0 in (0.0, 0.25, 0.5, 0.75, 1.0):
            traj = dynamics.iterate(DECREASING, phi0, step_size=0.1, max_iters=10_000)
            assert traj.converged, phi0
            assert abs(traj.terminal - 2.0 / 3.0) < 1e-3

    def test_bistability_partition(self):
        phi_e = 2.0 / 3.0
        for phi0 in np.linspace(0.0, 1.0, 21):
            traj = dynamics.iterate(BISTABLE, float(phi0))
            if phi0 < phi_e - 1e-3:
                assert traj.terminal < 1e-6
            elif phi0 > phi_e + 1e-3:
                assert traj.terminal > 1.0 - 1e-6

    def test_points_are_recorded_in_order(self):
        traj = dynamics.iterate(DECREASING, 0.1)
        its = [i for i, _ in traj.points]
        assert its == list(range(len(its)))
        assert traj.points[-1][1] == traj.terminal

    def test_input_validation(self):
        with pytest.raises(ValueError):
            dynamics.iterate(DECREASING, 1.5)
        with pytest.raises(ValueError):
            dynamics.iterate(DECREASING, 0.5, step_size=0.0)
        with pytest.raises(ValueError):
            dynamics.iterate(DECREASING, 0.5, max_iters=0)


class TestEssProbe:
    def test_unique_mixed_is_stable(self):
        assert dynamics.ess_probe(DECREASING, 2.0 / 3.0, epsilon=0.05) is True

    def test_shared_mixed_is_unstable(self):
        assert dynamics.ess_probe(BISTABLE, 2.0 / 3.0, epsilon=0.05) is False

    def test_pure_equilibrium_is_stable(self):
        assert dynamics.ess_probe(BISTABLE, 0.0, epsilon=0.05) is True
        assert dynamics.ess_probe(BISTABLE, 1.0, epsilon=0.05) is True

    def test_non_member_rejected(self):
        with pytest.raises(errors.NotAnEquilibrium):
            dynamics.ess_probe(BISTABLE, 0.4)
        with pytest.raises(errors.NotAnEquilibrium):
            dynamics.ess_probe(params(0.5, 2.0, 0.5), 0.0)  # only phi=1 is an equilibrium

    def test_epsilon_domain(self):
        with pytest.raises(ValueError):
            dynamics.ess_probe(BISTABLE, 0.0, epsilon=0.5)

    def test_np_mixed_always_unstable(self):
        rng = np.random.default_rng(8)
        seen = 0
        while seen < 10:
            rho = rng.uniform(0.1, 0.9)
            k = rng.uniform(1.0, 10.0)
            base = params(rho, k, cost=1.0)
            lo = analytic.cost_gap_np(base, 0.0)
            hi = analytic.cost_gap_np(base, 1.0)
            p = params(rho, k, cost=rng.uniform(1.05 * lo, 0.95 * hi))
            phi_e = equilibrium.mixed_equilibrium_np(p)
            if phi_e is None or not 0.05 < phi_e < 0.95:
                continue
            seen += 1
            assert dynamics.ess_probe(p, phi_e, discipline="np") is False
            assert dynamics.ess_probe(p, 0.0, discipline="np") is True
            assert dynamics.ess_probe(p, 1.0, discipline="np") is True
