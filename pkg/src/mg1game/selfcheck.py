"""Fast self-verification of the closed forms and their internal identities.

Run via the CLI ``verify`` subcommand.  Each check returns its worst
observed error so a failure report says how far off the implementation is,
not just that it is off.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import analytic, equilibrium, welfare
from .model import ModelParams

__all__ = ["CheckResult", "run_all"]

_RHOS = np.linspace(0.05, 0.95, 20)
_KS = np.linspace(1.0, 10.0, 20)
_PHIS = np.linspace(0.0, 1.0, 20)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _grid_params():
    for rho in _RHOS:
        for k in _KS:
            yield ModelParams(lam=rho, mu=1.0, k_var=k)


def identity_gap(tol: float = 1e-12) -> CheckResult:
    """wait_ordinary_pr - wait_premium_pr must reproduce the direct gap form."""
    worst = 0.0
    for p in _grid_params():
        for phi in _PHIS:
            gap = analytic.cost_gap_pr(p, phi)
            diff = analytic.wait_ordinary_pr(p, phi) - analytic.wait_premium_pr(p, phi)
            worst = max(worst, abs(diff - gap) / max(1.0, abs(gap)))
    return CheckResult("identity_gap", worst < tol, f"max rel err {worst:.3e}")


def identity_average(tol: float = 1e-12) -> CheckResult:
    """phi-weighted class waits must reproduce the direct average-wait form."""
    worst = 0.0
    for p in _grid_params():
        for phi in _PHIS:
            avg = analytic.avg_wait_pr(p, phi)
            mix = phi * analytic.wait_premium_pr(p, phi) + (1.0 - phi) * analytic.wait_ordinary_pr(p, phi)
            worst = max(worst, abs(mix - avg) / max(1.0, abs(avg)))
    return CheckResult("identity_average", worst < tol, f"max rel err {worst:.3e}")


def work_conservation(tol: float = 1e-12) -> CheckResult:
    """Pure-state PR averages and the NP average must equal K rho/(2 mu (1-rho))."""
    worst = 0.0
    for p in _grid_params():
        ref = p.k_var * p.rho / (2.0 * p.mu * (1.0 - p.rho))
        for val in (
            analytic.avg_wait_pr(p, 0.0),
            analytic.avg_wait_pr(p, 1.0),
            analytic.avg_wait_np(p, 0.37),
        ):
            worst = max(worst, abs(val - ref) / ref)
    return CheckResult("work_conservation", worst < tol, f"max rel err {worst:.3e}")


def slope_sign_law() -> CheckResult:
    """Finite-difference slope sign of the PR gap must match the indicator sign."""
    h = 1e-7
    bad = 0
    for p in _grid_params():
        indicator = equilibrium.curve_slope_indicator(p)
        for phi in (0.1, 0.5, 0.9):
            fd = (analytic.cost_gap_pr(p, phi + h) - analytic.cost_gap_pr(p, phi - h)) / (2 * h)
            scale = abs(analytic.cost_gap_pr(p, phi))
            if abs(indicator) < 1e-9:
                if abs(fd) > 1e-6 * scale:
                    bad += 1
            elif fd * indicator <= 0:
                bad += 1
    return CheckResult("slope_sign_law", bad == 0, f"{bad} sign mismatches")


def np_gap_increasing() -> CheckResult:
    """The NP gap must be strictly increasing in phi everywhere."""
    h = 1e-7
    bad = 0
    for p in _grid_params():
        for phi in (0.1, 0.5, 0.9):
            fd = analytic.cost_gap_np(p, phi + h) - analytic.cost_gap_np(p, phi - h)
            if fd <= 0:
                bad += 1
    return CheckResult("np_gap_increasing", bad == 0, f"{bad} non-increasing points")


def poa_bound() -> CheckResult:
    """Worst-case PoA over a wide log grid must stay below 4/3."""
    rhos = np.geomspace(1e-4, 0.99, 200)
    ks = np.geomspace(1.0, 1e4, 100)
    sup = welfare.poa_bound_sweep(rhos, ks)
    ok = sup.max_poa < 4.0 / 3.0 + 1e-9
    return CheckResult(
        "poa_bound",
        ok,
        f"max {sup.max_poa:.9f} at rho={sup.at_rho:.2e}, K={sup.at_k:.4g}",
    )


def run_all() -> list[CheckResult]:
    return [
        identity_gap(),
        identity_average(),
        work_conservation(),
        slope_sign_law(),
        np_gap_increasing(),
        poa_bound(),
    ]
