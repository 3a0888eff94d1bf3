"""Equilibria, welfare, and price of anarchy for priority-purchase M|G|1 queues.

Customers of a single-server queue may pay a fee for preemptive-resume
priority.  This package provides the closed-form waiting times and cost
curves (PR and non-preemptive), the equilibrium structure with stability
labels, the social optimum and price-of-anarchy formulas with their 4/3
bound, a discrete-event simulator that validates every closed form for
arbitrary service variance, and best-response dynamics that probe the
stability claims empirically.
"""

from . import analytic, dynamics, equilibrium, errors, model, welfare
from .analytic import (
    DISCIPLINES,
    WaitTimes,
    avg_wait_np,
    avg_wait_pr,
    cost_gap,
    cost_gap_np,
    cost_gap_pr,
    wait_ordinary_np,
    wait_ordinary_pr,
    wait_premium_np,
    wait_premium_pr,
    waits,
)
from .dynamics import Trajectory, best_response, ess_probe, iterate
from .equilibrium import (
    CurveShape,
    EquilibriumSet,
    classify_cost_curve,
    critical_load,
    curve_slope_indicator,
    equilibria_np,
    equilibria_pr,
    mixed_equilibrium,
    mixed_equilibrium_np,
)
from .model import (
    ModelParams,
    ServiceSpec,
    moments,
    params_from_config,
    params_to_config,
    service_spec_for_k,
    validate,
)
from .welfare import (
    PoaReport,
    SocialOptimum,
    SweepSupremum,
    phi_star,
    poa_bound_sweep,
    poa_given_cost,
    poa_low_load_limit,
    poa_supremum,
    poa_worst_case,
    socially_optimal,
    worst_state,
)

__version__ = "0.1.0"

_SIMULATOR_NAMES = {
    "SimConfig",
    "SimEstimate",
    "SimResult",
    "batch_means",
    "gap_estimate",
    "run_sim",
    "sample_service",
    "simulator",
}


def __getattr__(name: str):
    # the simulator pulls in numba, which is slow to import; load on demand
    if name in _SIMULATOR_NAMES:
        import importlib

        module = importlib.import_module(".simulator", __name__)
        return module if name == "simulator" else getattr(module, name)
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
