"""What selfish priority-buying costs, and why it never costs more than 4/3.

The provider's fee steers the population to some equilibrium; the price of
anarchy compares the average wait there to the best achievable average
wait.  For exponential service the two always coincide.  Away from K=2 the
ratio is worst at light load: it climbs toward 5/4 for deterministic
service and toward 4/3 as the service variance grows without bound.  This
script evaluates the fee-specific ratio at worked points, sweeps the
worst-case ratio over a (rho, K) grid, and writes the grid as CSV.
"""

import csv
import sys

import numpy as np

from mg1game import ModelParams, poa_bound_sweep, poa_given_cost, poa_worst_case


def fee_specific_examples():
    print("fee-specific price of anarchy:")
    cases = [
        (0.5, 2.0, 1.5, "exponential service: every equilibrium is optimal"),
        (0.75, 1.0, 3.5, "deterministic service, fee picks the worst mixed state"),
        (0.25, 4.0, 0.6, "high variance: unique mixed equilibrium, near-optimal"),
    ]
    for rho, k, fee, note in cases:
        rep = poa_given_cost(ModelParams(lam=rho, mu=1.0, k_var=k, cost=fee))
        print(
            f"  rho={rho}, K={k}, C={fee}: worst equilibrium phi="
            f"{rep.worst_equilibrium_phi:.4f}, PoA={rep.poa:.6f}  ({note})"
        )


def worst_case_frontier():
    print("\nworst-case PoA over all fees:")
    for k in (1.0, 1.5, 2.0, 4.0, 100.0):
        row = [poa_worst_case(rho, k) for rho in (1e-4, 0.25, 0.5, 0.75, 0.99)]
        print(f"  K={k:>5}: " + "  ".join(f"{v:.5f}" for v in row))
    print("  (rows head toward 1 as rho -> 1; the 1e-4 column shows the light-load limits)")


def sweep_to_csv(path):
    rhos = np.geomspace(1e-4, 0.99, 60)
    ks = np.geomspace(1.0, 1e4, 40)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["rho", "k", "poa"])
        for rho in rhos:
            for k in ks:
                writer.writerow([repr(float(rho)), repr(float(k)), repr(poa_worst_case(rho, k))])
    sup = poa_bound_sweep(rhos, ks)
    print(f"\nswept {sup.n_points} grid points -> {path}")
    print(
        f"supremum {sup.max_poa:.6f} at rho={sup.at_rho:.1e}, K={sup.at_k:.0f} "
        f"(4/3 = {4 / 3:.6f}, never reached)"
    )


def main():
    print(__doc__)
    fee_specific_examples()
    worst_case_frontier()
    sweep_to_csv(sys.argv[1] if len(sys.argv) > 1 else "poa_sweep.csv")


if __name__ == "__main__":
    main()
