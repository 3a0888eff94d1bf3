"""Equilibrium structure of the priority-purchase game.

Customers join the premium class when the waiting-time gap C(phi) exceeds
the fee C, stay ordinary when it is below, and are indifferent at equality.
Because C(phi) is monotone (or constant), the equilibrium set is determined
by where the fee sits relative to C(0) and C(1):

* fee below min(C(0), C(1)): everyone joins, unique.
* fee above max(C(0), C(1)): no one joins, unique.
* fee strictly between, curve decreasing: a unique mixed equilibrium phi_e.
* fee strictly between, curve increasing: both pure states and the mixed
  phi_e coexist.

Pure equilibria are evolutionarily stable; the mixed one is stable exactly
when it is the only equilibrium (decreasing curve), because only then does
the population flow back after a perturbation.  Under PR the curve slope
has the sign of (2-K) + 2 rho (K-1), so a decreasing curve requires K > 2
and rho below the critical load (K-2)/(2K-2).  The NP curve is increasing
for every valid parameter set, so an NP mixed equilibrium is never stable.

Fees exactly at min or max C(phi) are measure-zero boundary cases the
theory leaves open.  Convention here: the pure state at the attained
extremum is reported with ``boundary=True`` (the mixed root collapses onto
it and is omitted); it is labeled ESS exactly when the curve is decreasing,
which is when the best-response flow still pushes perturbations back.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .analytic import cost_gap_np, cost_gap_pr
from .errors import DegenerateCurve, NotApplicable
from .model import ModelParams

__all__ = [
    "CurveShape",
    "EquilibriumSet",
    "critical_load",
    "curve_slope_indicator",
    "classify_cost_curve",
    "mixed_equilibrium",
    "mixed_equilibrium_np",
    "equilibria_pr",
    "equilibria_np",
]

_REL_TOL = 1e-12


class CurveShape(str, enum.Enum):
    """Monotonicity of the cost curve C(phi) on [0, 1]."""

    DECREASING = "decreasing"
    CONSTANT = "constant"
    INCREASING = "increasing"


@dataclass(frozen=True)
class EquilibriumSet:
    """All equilibria of one instance, with stability labels.

    Present members carry an ESS flag (None when absent).  ``boundary`` is
    set when the fee sits exactly on min or max of the cost curve, where the
    reported set follows the documented boundary convention rather than the
    strict-inequality case analysis.  ``all_phi_indifferent`` marks the
    degenerate constant-curve instance whose fee equals the constant gap:
    every phi in [0, 1] is an equilibrium and no ESS label applies.
    """

    no_one_joins: bool
    everyone_joins: bool
    some_join_phi: float | None
    no_one_ess: bool | None = None
    everyone_ess: bool | None = None
    some_join_ess: bool | None = None
    all_phi_indifferent: bool = False
    boundary: bool = False

    def members(self) -> tuple[float, ...]:
        """Equilibrium phi values present (empty only for all_phi_indifferent)."""
        out: list[float] = []
        if self.no_one_joins:
            out.append(0.0)
        if self.everyone_joins:
            out.append(1.0)
        if self.some_join_phi is not None:
            out.append(self.some_join_phi)
        return tuple(out)

    def to_record(self) -> dict:
        """Flat record for CSV/JSON emission."""
        return {
            "no_one_joins": self.no_one_joins,
            "no_one_ess": self.no_one_ess,
            "everyone_joins": self.everyone_joins,
            "everyone_ess": self.everyone_ess,
            "some_join_phi": self.some_join_phi,
            "some_join_ess": self.some_join_ess,
            "all_phi_indifferent": self.all_phi_indifferent,
            "boundary": self.boundary,
        }


def critical_load(k_var: float) -> float:
    """Load threshold (K-2)/(2K-2) below which the PR cost curve decreases.

    Defined only for K > 2; approaches 1/2 as K grows.
    """
    if k_var <= 2:
        raise NotApplicable(f"critical load requires K > 2, got K={k_var}")
    return (k_var - 2.0) / (2.0 * k_var - 2.0)


def curve_slope_indicator(params: ModelParams) -> float:
    """(2-K) + 2 rho (K-1): carries the sign of dC/dphi for the PR curve."""
    return (2.0 - params.k_var) + 2.0 * params.rho * (params.k_var - 1.0)


def classify_cost_curve(params: ModelParams) -> CurveShape:
    """Classify the PR cost curve as decreasing, constant, or increasing.

    The slope indicator is compared to zero with relative tolerance 1e-12 so
    the constant case is reproducible in floating point; it can only trigger
    for K > 2, where the two indicator terms can cancel.
    """
    d = curve_slope_indicator(params)
    scale = max(
        1.0, abs(2.0 - params.k_var), 2.0 * params.rho * abs(params.k_var - 1.0)
    )
    if abs(d) <= _REL_TOL * scale:
        return CurveShape.CONSTANT
    return CurveShape.DECREASING if d < 0 else CurveShape.INCREASING


def mixed_equilibrium(params: ModelParams) -> float | None:
    """Root of C(phi) = C for the PR queue, if it lies strictly inside (0, 1).

    Raises DegenerateCurve when the curve is constant (no unique root).
    Returns None when the closed-form root falls outside (0, 1), i.e. the
    fee is outside the range of the curve.
    """
    if classify_cost_curve(params) is CurveShape.CONSTANT:
        raise DegenerateCurve(
            "cost curve is constant in phi; C(phi) = C has no unique solution"
        )
    rho, k, c, mu = params.rho, params.k_var, params.cost, params.mu
    den = rho * (1.0 - rho) * (2.0 * mu * c + 2.0 - k)
    if den == 0.0:
        # fee equals the curve's horizontal-asymptote level, which lies
        # outside the range of C on [0, 1]; no crossing
        return None
    phi = (2.0 * mu * c * (1.0 - rho) - k * rho) / den
    return phi if 0.0 < phi < 1.0 else None


def mixed_equilibrium_np(params: ModelParams) -> float | None:
    """Root of the NP cost curve's indifference condition inside (0, 1)."""
    rho, k, c, mu = params.rho, params.k_var, params.cost, params.mu
    if c <= 0.0:
        return None
    phi = 1.0 / rho - k * rho / (2.0 * mu * c * (1.0 - rho))
    return phi if 0.0 < phi < 1.0 else None


def _increasing_curve_set(
    c: float, c0: float, c1: float, phi_e: float | None, rel: float
) -> EquilibriumSet:
    # shared by the PR increasing case and the NP queue (always increasing):
    # min at phi=0, max at phi=1
    if abs(c - c0) <= rel:
        return EquilibriumSet(
            no_one_joins=True,
            everyone_joins=True,
            some_join_phi=None,
            no_one_ess=False,
            everyone_ess=True,
            boundary=True,
        )
    if abs(c - c1) <= rel:
        return EquilibriumSet(
            no_one_joins=True,
            everyone_joins=True,
            some_join_phi=None,
            no_one_ess=True,
            everyone_ess=False,
            boundary=True,
        )
    if c < c0:
        return EquilibriumSet(False, True, None, everyone_ess=True)
    if c > c1:
        return EquilibriumSet(True, False, None, no_one_ess=True)
    if phi_e is None:  # pragma: no cover - excluded by the band checks above
        raise RuntimeError("interior fee but no mixed root; should be impossible")
    return EquilibriumSet(
        no_one_joins=True,
        everyone_joins=True,
        some_join_phi=phi_e,
        no_one_ess=True,
        everyone_ess=True,
        some_join_ess=False,
    )


def equilibria_pr(params: ModelParams) -> EquilibriumSet:
    """Enumerate all PR equilibria for the given fee, with ESS labels.

    Follows the four-case analysis over the position of the fee relative to
    the endpoint gaps C(0), C(1) and the curve shape; see the module
    docstring for the boundary-fee and constant-curve conventions.
    """
    c = params.cost
    c0 = cost_gap_pr(params, 0.0)
    c1 = cost_gap_pr(params, 1.0)
    rel = _REL_TOL * max(1.0, c, c0, c1)
    shape = classify_cost_curve(params)

    if shape is CurveShape.CONSTANT:
        if abs(c - c0) <= rel:
            return EquilibriumSet(False, False, None, all_phi_indifferent=True)
        if c < c0:
            return EquilibriumSet(False, True, None, everyone_ess=True)
        return EquilibriumSet(True, False, None, no_one_ess=True)

    if shape is CurveShape.INCREASING:
        return _increasing_curve_set(c, c0, c1, mixed_equilibrium(params), rel)

    # decreasing: max at phi=0, min at phi=1
    if abs(c - c1) <= rel:
        return EquilibriumSet(
            False, True, None, everyone_ess=True, boundary=True
        )
    if abs(c - c0) <= rel:
        return EquilibriumSet(
            True, False, None, no_one_ess=True, boundary=True
        )
    if c < c1:
        return EquilibriumSet(False, True, None, everyone_ess=True)
    if c > c0:
        return EquilibriumSet(True, False, None, no_one_ess=True)
    phi_e = mixed_equilibrium(params)
    if phi_e is None:  # pragma: no cover - excluded by the band checks above
        raise RuntimeError("interior fee but no mixed root; should be impossible")
    return EquilibriumSet(False, False, phi_e, some_join_ess=True)


def equilibria_np(params: ModelParams) -> EquilibriumSet:
    """Enumerate all NP equilibria; the mixed one is never evolutionarily stable."""
    c = params.cost
    c0 = cost_gap_np(params, 0.0)
    c1 = cost_gap_np(params, 1.0)
    rel = _REL_TOL * max(1.0, c, c0, c1)
    return _increasing_curve_set(c, c0, c1, mixed_equilibrium_np(params), rel)
