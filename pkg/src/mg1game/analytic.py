"""Closed-form expected waits for the two-class priority-purchase M|G|1 queue.

A fraction ``phi`` of customers buys premium (high) priority; the rest stay
ordinary.  Waiting time is sojourn time minus the customer's total service
requirement, so delay caused by being preempted counts as waiting.  Under
preemptive-resume (PR) the premium class sees a private M|G|1 queue; under
non-preemptive (NP) an in-service customer always completes.

With rho = lambda/mu and second moment of service K/mu^2:

PR:  E[W_p] = K phi rho / (2 mu (1 - phi rho))
     E[W_o] = rho (K + 2 phi (1-rho)) / (2 mu (1-rho)(1 - phi rho))
     gap    = (K rho + (2-K) phi rho (1-rho)) / (2 mu (1-rho)(1 - phi rho))
     E[W]   = rho (K - 2 phi rho + (2-K) phi (1 - phi(1-rho)))
              / (2 mu (1-rho)(1 - phi rho))

NP:  E[W_p] = K rho / (2 mu (1 - phi rho))
     E[W_o] = K rho / (2 mu (1-rho)(1 - phi rho))
     gap    = K rho^2 / (2 mu (1-rho)(1 - phi rho))
     E[W]   = K rho / (2 mu (1-rho)),  independent of phi.

The gap and average-wait forms are evaluated directly (not assembled from
the per-class forms), so the pairwise identities between them are genuine
cross-checks; see selfcheck.identity_gap / selfcheck.identity_average.

Pure states are work-conserving fixed points: E[W] at phi=0 and phi=1
equals the class-blind M|G|1 delay K rho / (2 mu (1-rho)) under both
disciplines.  At phi=1 (resp. phi=0) the ordinary (premium) wait is the
tagged-customer limit: what a hypothetical deviator would face.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import ModelParams

__all__ = [
    "WaitTimes",
    "wait_premium_pr",
    "wait_ordinary_pr",
    "cost_gap_pr",
    "avg_wait_pr",
    "wait_premium_np",
    "wait_ordinary_np",
    "cost_gap_np",
    "avg_wait_np",
    "cost_gap",
    "waits",
    "DISCIPLINES",
]

DISCIPLINES = ("pr", "np")


def _check_phi(phi: float) -> None:
    if not 0.0 <= phi <= 1.0:
        raise ValueError(f"phi must lie in [0, 1], got {phi}")


def _check_discipline(discipline: str) -> str:
    d = discipline.lower()
    if d not in DISCIPLINES:
        raise ValueError(f"discipline must be one of {DISCIPLINES}, got {discipline!r}")
    return d


@dataclass(frozen=True)
class WaitTimes:
    """Per-class and phi-weighted expected waits for one (params, phi) point."""

    premium: float
    ordinary: float
    average: float


def wait_premium_pr(params: ModelParams, phi: float) -> float:
    """Expected premium-class wait under preemptive-resume.

    The premium class is oblivious to ordinary customers, so this is the
    M|G|1 queueing delay of the premium-only subsystem at load phi*rho.
    """
    _check_phi(phi)
    rho = params.rho
    return params.k_var * phi * rho / (2.0 * params.mu * (1.0 - phi * rho))


def wait_ordinary_pr(params: ModelParams, phi: float) -> float:
    """Expected ordinary-class wait under preemptive-resume.

    At phi=1 this is the tagged-customer limit: the wait a lone ordinary
    customer would face against an all-premium population.
    """
    _check_phi(phi)
    rho = params.rho
    return (
        rho
        * (params.k_var + 2.0 * phi * (1.0 - rho))
        / (2.0 * params.mu * (1.0 - rho) * (1.0 - phi * rho))
    )


def cost_gap_pr(params: ModelParams, phi: float) -> float:
    """Indifference cost curve C(phi) = E[W_o] - E[W_p] under PR.

    Strictly positive for rho > 0: priority always helps.
    """
    _check_phi(phi)
    rho, k = params.rho, params.k_var
    return (
        (k * rho + (2.0 - k) * phi * rho * (1.0 - rho))
        / (2.0 * params.mu * (1.0 - rho) * (1.0 - phi * rho))
    )


def avg_wait_pr(params: ModelParams, phi: float) -> float:
    """Population-average expected wait E[W] under PR."""
    _check_phi(phi)
    rho, k = params.rho, params.k_var
    return (
        rho
        * (k - 2.0 * phi * rho + (2.0 - k) * phi * (1.0 - phi * (1.0 - rho)))
        / (2.0 * params.mu * (1.0 - rho) * (1.0 - phi * rho))
    )


def wait_premium_np(params: ModelParams, phi: float) -> float:
    """Expected premium-class wait with no preemption (residual work counts)."""
    _check_phi(phi)
    rho = params.rho
    return params.k_var * rho / (2.0 * params.mu * (1.0 - phi * rho))


def wait_ordinary_np(params: ModelParams, phi: float) -> float:
    """Expected ordinary-class wait with no preemption."""
    _check_phi(phi)
    rho = params.rho
    return params.k_var * rho / (2.0 * params.mu * (1.0 - rho) * (1.0 - phi * rho))


def cost_gap_np(params: ModelParams, phi: float) -> float:
    """Indifference cost curve for the NP queue; strictly increasing in phi."""
    _check_phi(phi)
    rho = params.rho
    return params.k_var * rho * rho / (2.0 * params.mu * (1.0 - rho) * (1.0 - phi * rho))


def avg_wait_np(params: ModelParams, phi: float = 0.0) -> float:
    """Population-average wait for the NP queue: constant in phi."""
    _check_phi(phi)
    rho = params.rho
    return params.k_var * rho / (2.0 * params.mu * (1.0 - rho))


def cost_gap(params: ModelParams, phi: float, discipline: str = "pr") -> float:
    """Dispatch to cost_gap_pr or cost_gap_np."""
    return cost_gap_pr(params, phi) if _check_discipline(discipline) == "pr" else cost_gap_np(params, phi)


def waits(params: ModelParams, phi: float, discipline: str = "pr") -> WaitTimes:
    """All three expected waits for one state, as a WaitTimes record."""
    if _check_discipline(discipline) == "pr":
        return WaitTimes(
            premium=wait_premium_pr(params, phi),
            ordinary=wait_ordinary_pr(params, phi),
            average=avg_wait_pr(params, phi),
        )
    return WaitTimes(
        premium=wait_premium_np(params, phi),
        ordinary=wait_ordinary_np(params, phi),
        average=avg_wait_np(params, phi),
    )
