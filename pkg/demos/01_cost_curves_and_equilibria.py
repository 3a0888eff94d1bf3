"""How the premium fee shapes who buys priority.

The waiting-time gap C(phi) between the ordinary and premium classes is the
most a customer would pay to jump the queue when a fraction phi already
has.  Its monotonicity decides everything: an increasing gap means priority
gets more valuable as more people buy it (a bandwagon), a decreasing gap
means the classes cannibalize each other's advantage (congestion), and the
equilibria for a fee C are the crossings of C with the curve.
"""

import numpy as np

from mg1game import ModelParams, classify_cost_curve, cost_gap_pr, equilibria_pr


def show_curve(rho, k):
    p = ModelParams(lam=rho, mu=1.0, k_var=k)
    shape = classify_cost_curve(p).value
    print(f"\nrho={rho}, K={k}: cost curve is {shape}")
    phis = np.linspace(0.0, 1.0, 6)
    print("  phi : " + "  ".join(f"{phi:5.2f}" for phi in phis))
    print("  C   : " + "  ".join(f"{cost_gap_pr(p, phi):5.3f}" for phi in phis))


def show_equilibria(rho, k, fees):
    print(f"\nequilibria at rho={rho}, K={k}:")
    for fee in fees:
        p = ModelParams(lam=rho, mu=1.0, k_var=k, cost=fee)
        eqs = equilibria_pr(p)
        labels = []
        if eqs.no_one_joins:
            labels.append("no one joins" + (" [ESS]" if eqs.no_one_ess else ""))
        if eqs.everyone_joins:
            labels.append("everyone joins" + (" [ESS]" if eqs.everyone_ess else ""))
        if eqs.some_join_phi is not None:
            ess = " [ESS]" if eqs.some_join_ess else ""
            labels.append(f"some join at phi_e={eqs.some_join_phi:.4f}{ess}")
        if eqs.all_phi_indifferent:
            labels.append("every phi indifferent")
        print(f"  fee C={fee:<5} -> " + "; ".join(labels))


def main():
    print(__doc__)

    # exponential-variance service: the gap always grows with phi
    show_curve(0.5, 2.0)
    show_equilibria(0.5, 2.0, fees=[0.5, 1.5, 3.0])

    # high-variance service at low load: the gap shrinks as phi grows,
    # and an interior fee pins a unique (and stable) mixed equilibrium
    show_curve(0.25, 4.0)
    show_equilibria(0.25, 4.0, fees=[0.5, 0.6, 0.7])

    # exactly at the critical load the curve degenerates to a constant
    show_curve(1.0 / 3.0, 4.0)
    show_equilibria(1.0 / 3.0, 4.0, fees=[0.9, 1.0, 1.1])


if __name__ == "__main__":
    main()
