"""Why preemption is the whole story.

Forbid preemption and the picture collapses: the population-average wait
stops depending on how many customers buy priority (so every state is
socially optimal and the price of anarchy is 1 by default), the cost curve
is increasing no matter the service variance, and a mixed equilibrium,
when the fee admits one, is never stable.  Service variance still moves
the fees the provider can charge, just not the welfare.
"""

import numpy as np

from mg1game import (
    ModelParams,
    avg_wait_np,
    avg_wait_pr,
    cost_gap_np,
    equilibria_np,
    ess_probe,
)


def main():
    print(__doc__)

    p = ModelParams(lam=0.5, mu=1.0, k_var=2.0)
    print("average wait vs phi at rho=0.5, K=2:")
    print("  phi : " + "  ".join(f"{phi:5.2f}" for phi in np.linspace(0, 1, 6)))
    print("  NP  : " + "  ".join(f"{avg_wait_np(p, phi):5.3f}" for phi in np.linspace(0, 1, 6)))
    print("  PR  : " + "  ".join(f"{avg_wait_pr(p, phi):5.3f}" for phi in np.linspace(0, 1, 6)))

    print("\nNP fee bands at rho=0.5, K=2 "
          f"(gap runs from {cost_gap_np(p, 0.0):.3f} to {cost_gap_np(p, 1.0):.3f}):")
    for fee in (0.4, 0.8, 1.2):
        eqs = equilibria_np(p.with_cost(fee))
        labels = []
        if eqs.no_one_joins:
            labels.append("no one joins")
        if eqs.everyone_joins:
            labels.append("everyone joins")
        if eqs.some_join_phi is not None:
            labels.append(f"some join at {eqs.some_join_phi:.3f}")
        print(f"  C={fee}: " + ", ".join(labels))

    mid = p.with_cost(0.8)
    phi_e = equilibria_np(mid).some_join_phi
    print("\nperturbation probes at C=0.8:")
    for phi, name in ((phi_e, f"mixed {phi_e:.3f}"), (0.0, "no one joins"), (1.0, "everyone joins")):
        verdict = "stable" if ess_probe(mid, phi, discipline="np") else "unstable"
        print(f"  {name:<16} -> {verdict}")

    print("\nraising service variance only rescales the chargeable fees:")
    for k in (1.0, 2.0, 8.0):
        q = ModelParams(lam=0.5, mu=1.0, k_var=k)
        print(
            f"  K={k}: fee band ({cost_gap_np(q, 0.0):.3f}, {cost_gap_np(q, 1.0):.3f}), "
            f"average wait {avg_wait_np(q):.3f} regardless of phi"
        )


if __name__ == "__main__":
    main()
