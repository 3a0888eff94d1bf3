"""A mixed equilibrium that survives invasion.

With exponential (or any low-variance) service, a fee that admits a mixed
equilibrium also admits both pure ones, and the mixed point is a knife
edge: any drift snowballs toward everyone or no one joining.  With service
variance above exponential (K > 2) and load below (K-2)/(2K-2), the mixed
equilibrium is the only one, and best-response dynamics home in on it from
anywhere.  This script shows both regimes and probes each equilibrium with
a deliberate perturbation.
"""

from mg1game import ModelParams, critical_load, equilibria_pr, ess_probe, iterate


def run_dynamics(p, label):
    print(f"\n{label} (rho={p.rho:.2f}, K={p.k_var}, C={p.cost}):")
    for phi0 in (0.0, 0.25, 0.5, 0.75, 1.0):
        traj = iterate(p, phi0, step_size=0.1)
        print(
            f"  from phi0={phi0:4.2f}: terminal={traj.terminal:.6f} "
            f"after {traj.iterations_used} iterations"
        )


def probe(p, phi, name):
    verdict = "stable" if ess_probe(p, phi, epsilon=0.05) else "unstable"
    print(f"  perturbing {name} by 0.05 -> {verdict}")


def main():
    print(__doc__)
    print(f"critical load for K=4: {critical_load(4.0):.4f}")

    unique = ModelParams(lam=0.25, mu=1.0, k_var=4.0, cost=0.6)
    run_dynamics(unique, "high variance, low load")
    eqs = equilibria_pr(unique)
    print(f"  equilibrium set: some_join at {eqs.some_join_phi:.6f}, unique")
    probe(unique, eqs.some_join_phi, f"phi_e={eqs.some_join_phi:.4f}")

    knife = ModelParams(lam=0.5, mu=1.0, k_var=2.0, cost=1.5)
    run_dynamics(knife, "exponential service, interior fee")
    eqs = equilibria_pr(knife)
    print(
        "  equilibrium set: no one joins, everyone joins, "
        f"some_join at {eqs.some_join_phi:.6f}"
    )
    probe(knife, eqs.some_join_phi, f"phi_e={eqs.some_join_phi:.4f}")
    probe(knife, 0.0, "no one joins")
    probe(knife, 1.0, "everyone joins")


if __name__ == "__main__":
    main()
