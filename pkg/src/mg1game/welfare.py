"""Social optimum and price of anarchy for the PR queue.

The fee is a pure transfer between customers and the provider, so social
welfare reduces to the population-average wait E[W].  Its derivative in phi
changes sign exactly once, at

    phi_star = (1 - sqrt(1-rho)) / rho = 1 / (1 + sqrt(1-rho)),

so the optimum is bang-bang in the variance parameter: for K < 2 the pure
states phi in {0, 1} minimize E[W] (phi_star is the interior maximum), for
K = 2 every state is optimal (E[W] is constant), and for K > 2 phi_star is
the unique minimum.

Price of anarchy compares the worst equilibrium average wait to the best
achievable average wait.  Maximized over fees it has closed forms in
(rho, K) alone.  Both are evaluated here through

    h(rho) = (1 + 2 s) / (1 + s)^2,   s = sqrt(1 - rho),

using the exact factorization 2 - 2(1-rho)^{3/2} - 3 rho = -rho^2 h(rho);
the raw expression loses every significant digit as rho -> 0, while h is
cancellation-free, so the small-load limits (5/4 at K=1, 4K/(2+3K) for
K > 2, 4/3 overall) come out to full precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .analytic import avg_wait_pr
from .equilibrium import equilibria_pr
from .errors import InfeasibleVariance, UnstableLoad
from .model import ModelParams

__all__ = [
    "SocialOptimum",
    "PoaReport",
    "SweepSupremum",
    "phi_star",
    "socially_optimal",
    "worst_state",
    "poa_given_cost",
    "poa_worst_case",
    "poa_low_load_limit",
    "poa_supremum",
    "poa_bound_sweep",
]

_K_EQ_TOL = 1e-12


@dataclass(frozen=True)
class SocialOptimum:
    """Where the average wait is minimized, and its minimum value.

    kind is "pure_pair" (phis == (0, 1), K < 2), "all" (every phi optimal,
    K = 2, phis empty), or "interior" (phis == (phi_star,), K > 2).
    """

    kind: str
    phis: tuple[float, ...]
    min_avg_wait: float


@dataclass(frozen=True)
class PoaReport:
    """Worst-equilibrium wait against the social optimum for one fixed fee.

    all_phi_equilibria marks the degenerate constant-curve instance where
    every state is an equilibrium; the numerator then maximizes over [0, 1].
    """

    worst_equilibrium_phi: float
    worst_eq_wait: float
    optimal_wait: float
    poa: float
    all_phi_equilibria: bool = False


@dataclass(frozen=True)
class SweepSupremum:
    """Maximum worst-case price of anarchy over a (rho, K) grid."""

    max_poa: float
    at_rho: float
    at_k: float
    n_points: int


def phi_star(rho: float) -> float:
    """State equalizing the marginal effect of priority on average wait.

    Evaluated as 1/(1 + sqrt(1-rho)), which is exact as rho -> 0 where the
    textbook form (1 - sqrt(1-rho))/rho is 0/0.  Lies in (1/2, 1) and
    increases with rho.
    """
    if not 0.0 < rho < 1.0:
        raise UnstableLoad(f"rho must lie in (0, 1), got {rho}")
    return 1.0 / (1.0 + math.sqrt(1.0 - rho))


def socially_optimal(params: ModelParams) -> SocialOptimum:
    """Optimal premium fractions and the minimum average wait."""
    k = params.k_var
    pure_wait = avg_wait_pr(params, 0.0)
    if abs(k - 2.0) <= _K_EQ_TOL:
        return SocialOptimum("all", (), pure_wait)
    if k < 2.0:
        return SocialOptimum("pure_pair", (0.0, 1.0), pure_wait)
    ps = phi_star(params.rho)
    return SocialOptimum("interior", (ps,), avg_wait_pr(params, ps))


def worst_state(params: ModelParams) -> float:
    """Argmax of the average wait over [0, 1].

    K < 2: the interior stationary point phi_star.  K = 2: all states tie
    (0 by convention).  K > 2: the pure states tie; returned via phi = 0.
    """
    if params.k_var < 2.0 - _K_EQ_TOL:
        return phi_star(params.rho)
    return 0.0


def poa_given_cost(params: ModelParams) -> PoaReport:
    """Price of anarchy at the instance's actual fee.

    The numerator maximizes E[W] over the equilibrium set; in the
    all-phi-indifferent degenerate case the set is [0, 1], so the maximum
    is taken at the global worst state.
    """
    eqs = equilibria_pr(params)
    if eqs.all_phi_indifferent:
        worst_phi = worst_state(params)
        worst_wait = avg_wait_pr(params, worst_phi)
    else:
        worst_phi, worst_wait = max(
            ((m, avg_wait_pr(params, m)) for m in eqs.members()),
            key=lambda pair: pair[1],
        )
    opt = socially_optimal(params)
    return PoaReport(
        worst_equilibrium_phi=worst_phi,
        worst_eq_wait=worst_wait,
        optimal_wait=opt.min_avg_wait,
        poa=worst_wait / opt.min_avg_wait,
        all_phi_equilibria=eqs.all_phi_indifferent,
    )


def _h(rho: float) -> float:
    s = math.sqrt(1.0 - rho)
    return (1.0 + 2.0 * s) / ((1.0 + s) * (1.0 + s))


def poa_worst_case(rho: float, k_var: float) -> float:
    """Worst-case price of anarchy over all fees, for one (rho, K).

    Independent of mu and C.  Equals 1 exactly at K=2; otherwise evaluated
    through the cancellation-free factor h(rho), see module docstring.
    Decreases in rho, approaching (2+3K)/(4K) for K < 2 and 4K/(2+3K) for
    K > 2 as rho -> 0, and 1 as rho -> 1.
    """
    if not 0.0 < rho < 1.0:
        raise UnstableLoad(f"rho must lie in (0, 1), got {rho}")
    if k_var < 1.0:
        raise InfeasibleVariance(f"K must be >= 1, got {k_var}")
    if abs(k_var - 2.0) <= _K_EQ_TOL:
        return 1.0
    h = _h(rho)
    if k_var < 2.0:
        return (2.0 - (2.0 - k_var) * h) / k_var
    return k_var / (2.0 + (k_var - 2.0) * h)


def poa_low_load_limit(k_var: float) -> float:
    """Limit of poa_worst_case as rho -> 0, for fixed K."""
    if k_var < 1.0:
        raise InfeasibleVariance(f"K must be >= 1, got {k_var}")
    if abs(k_var - 2.0) <= _K_EQ_TOL:
        return 1.0
    if k_var < 2.0:
        return (2.0 + 3.0 * k_var) / (4.0 * k_var)
    return 4.0 * k_var / (2.0 + 3.0 * k_var)


def poa_supremum() -> float:
    """Least upper bound of the worst-case price of anarchy: 4/3.

    Approached, never attained, as K -> infinity and rho -> 0.
    """
    return 4.0 / 3.0


def poa_bound_sweep(rhos: Iterable[float], ks: Sequence[float]) -> SweepSupremum:
    """Maximum of poa_worst_case over the grid product of rhos and ks.

    Deterministic regardless of iteration order: ties resolve to the
    lexicographically smallest (rho, K) location.
    """
    best = -math.inf
    at = (math.nan, math.nan)
    n = 0
    for rho in rhos:
        for k in ks:
            n += 1
            v = poa_worst_case(rho, k)
            if v > best or (v == best and (rho, k) < at):
                best = v
                at = (rho, k)
    if n == 0:
        raise ValueError("empty sweep grid")
    return SweepSupremum(max_poa=best, at_rho=at[0], at_k=at[1], n_points=n)
