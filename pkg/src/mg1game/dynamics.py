"""Best-response population dynamics and empirical stability probes.

The state phi moves toward the population best response: join (1) when the
waiting-time gap exceeds the fee, stay (0) when it falls short, hold when
indifferent.  On a line this flow is just the sign of C(phi) - C, so a
deterministic scheme suffices to decide stability: a stable equilibrium
pulls perturbed states back, an unstable one repels them toward the pure
states.

A fixed inertia step can never settle onto an interior rest point (it hops
across it forever in a band the width of the step), so the step is halved
every time the motion reverses direction.  Away from interior equilibria
reversals never happen and the iteration keeps the full step; around a
stable mixed equilibrium the halvings shrink the hop geometrically until
the successive-change tolerance is met.
"""

from __future__ import annotations

from dataclasses import dataclass

from .analytic import cost_gap
from .equilibrium import equilibria_np, equilibria_pr
from .errors import NotAnEquilibrium
from .model import ModelParams

__all__ = ["Trajectory", "best_response", "iterate", "ess_probe"]

GAP_RTOL = 1e-10  # indifference band on the gap-vs-fee comparison
_MEMBER_ATOL = 1e-6  # matching a probed phi against the equilibrium set


@dataclass(frozen=True)
class Trajectory:
    """One best-response path: (iteration, phi) points and how it ended."""

    points: tuple[tuple[int, float], ...]
    terminal: float
    converged: bool
    iterations_used: int


def best_response(
    params: ModelParams, phi: float, discipline: str = "pr"
) -> float:
    """Population best response at state phi: 1 join, 0 stay, phi indifferent.

    The gap-vs-fee comparison uses relative tolerance 1e-10 so states that
    satisfy the indifference condition up to rounding are treated as such.
    """
    gap = cost_gap(params, phi, discipline)
    c = params.cost
    tol = GAP_RTOL * max(abs(c), abs(gap))
    if gap > c + tol:
        return 1.0
    if gap < c - tol:
        return 0.0
    return phi


def iterate(
    params: ModelParams,
    phi0: float,
    step_size: float = 0.1,
    tolerance: float = 1e-8,
    max_iters: int = 100_000,
    discipline: str = "pr",
) -> Trajectory:
    """Run best-response-with-inertia dynamics from phi0.

    Update: phi <- phi + step * (best_response(phi) - phi), clamped to
    [0, 1], with the step halved on every direction reversal (see module
    docstring).  Stops when the change per iteration drops below
    ``tolerance`` or after ``max_iters`` iterations; once the best-response
    target itself is within tolerance the state snaps onto it, so runs into
    an absorbing pure state terminate at exactly 0 or 1.
    """
    if not 0.0 <= phi0 <= 1.0:
        raise ValueError(f"phi0 must lie in [0, 1], got {phi0}")
    if not 0.0 < step_size <= 1.0:
        raise ValueError(f"step_size must lie in (0, 1], got {step_size}")
    if max_iters < 1:
        raise ValueError(f"max_iters must be >= 1, got {max_iters}")

    phi = float(phi0)
    step = float(step_size)
    points = [(0, phi)]
    prev_dir = 0
    reversed_once = False
    converged = False
    used = max_iters
    for it in range(1, max_iters + 1):
        target = best_response(params, phi, discipline)
        delta = target - phi
        # a monotone run is headed for an absorbing state: once the next hop
        # would fall below tolerance, land on the target exactly
        if abs(delta) <= tolerance or (not reversed_once and step * abs(delta) <= tolerance):
            phi = target
            points.append((it, phi))
            converged = True
            used = it
            break
        direction = (delta > 0) - (delta < 0)
        if prev_dir != 0 and direction != prev_dir:
            step *= 0.5
            reversed_once = True
        prev_dir = direction
        new_phi = min(1.0, max(0.0, phi + step * delta))
        points.append((it, new_phi))
        moved = abs(new_phi - phi)
        phi = new_phi
        if moved < tolerance:
            converged = True
            used = it
            break
    return Trajectory(
        points=tuple(points), terminal=phi, converged=converged, iterations_used=used
    )


def ess_probe(
    params: ModelParams,
    eq_phi: float,
    epsilon: float = 0.02,
    discipline: str = "pr",
    step_size: float = 0.1,
    tolerance: float = 1e-8,
    max_iters: int = 100_000,
) -> bool:
    """Perturb an equilibrium by +/- epsilon and test whether the flow returns.

    Returns True (stable) when both perturbed trajectories end within
    epsilon/10 of eq_phi.  Raises NotAnEquilibrium if eq_phi is not a member
    of the instance's equilibrium set for the given discipline.
    """
    if not 0.0 < epsilon <= 0.1:
        raise ValueError(f"epsilon must lie in (0, 0.1], got {epsilon}")
    eqs = equilibria_pr(params) if discipline.lower() == "pr" else equilibria_np(params)
    if not eqs.all_phi_indifferent and not any(
        abs(eq_phi - m) <= _MEMBER_ATOL for m in eqs.members()
    ):
        raise NotAnEquilibrium(
            f"phi={eq_phi} is not an equilibrium of this instance ({discipline})"
        )
    back = True
    for start in (min(1.0, eq_phi + epsilon), max(0.0, eq_phi - epsilon)):
        traj = iterate(
            params,
            start,
            step_size=step_size,
            tolerance=tolerance,
            max_iters=max_iters,
            discipline=discipline,
        )
        back = back and abs(traj.terminal - eq_phi) <= epsilon / 10.0
    return back
