"""Discrete-event simulation of the two-class priority-purchase M|G|1 queue.

Each arrival independently joins the premium class with probability phi and
draws its full service requirement on arrival.  Under preemptive-resume a
premium arrival interrupts an in-service ordinary customer, whose remaining
work is preserved; the preempted customer resumes at the head of the
ordinary queue once no premium work remains.  Under the non-preemptive
discipline an in-service customer always completes.  Scheduling is
first-come-first-served within each class, and premium customers never
preempt each other.

Waiting time is recorded as departure - arrival - total service
requirement, matching the analytic convention that preemption-induced
delay counts as waiting.

Randomness comes from three independent substreams (interarrival gaps,
class choices, service draws) spawned from the master seed, so runs with
the same seed are bit-identical and the two disciplines see common random
numbers.  The event loop itself is deterministic arithmetic over the
pre-drawn variates, compiled with numba; simultaneous events are resolved
by processing arrivals before departures and otherwise in draw order.

Output analysis uses the method of batch means: post-warmup per-customer
waits, in arrival order, are split into contiguous batches whose means
feed a Student-t confidence interval.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit
from scipy import stats

from .errors import InsufficientData, InvalidConfig
from .model import ModelParams, ServiceSpec, moments

__all__ = [
    "SimConfig",
    "SimEstimate",
    "SimResult",
    "sample_service",
    "batch_means",
    "gap_estimate",
    "run_sim",
]

_MOMENT_MATCH_RTOL = 1e-9


@dataclass(frozen=True)
class SimConfig:
    """A fully pinned simulation run; equal configs give bit-identical results."""

    params: ModelParams
    phi: float
    discipline: str  # "pr" or "np"
    service: ServiceSpec
    n_arrivals: int
    warmup_arrivals: int
    n_batches: int = 20
    seed: int = 0

    def __post_init__(self) -> None:
        if not 0.0 <= self.phi <= 1.0:
            raise InvalidConfig(f"phi must lie in [0, 1], got {self.phi}")
        if self.discipline not in ("pr", "np"):
            raise InvalidConfig(f"discipline must be 'pr' or 'np', got {self.discipline!r}")
        if self.warmup_arrivals < 0:
            raise InvalidConfig("warmup_arrivals must be >= 0")
        if self.n_arrivals <= self.warmup_arrivals:
            raise InvalidConfig(
                f"n_arrivals={self.n_arrivals} must exceed warmup_arrivals={self.warmup_arrivals}"
            )
        if self.n_batches < 10:
            raise InvalidConfig(f"n_batches must be >= 10, got {self.n_batches}")
        n_obs = self.n_arrivals - self.warmup_arrivals
        if n_obs % self.n_batches != 0 or n_obs < self.n_batches:
            raise InvalidConfig(
                f"{n_obs} post-warmup observations do not divide into "
                f"{self.n_batches} equal contiguous batches"
            )
        mean, m2 = moments(self.service)
        p = self.params
        if not (
            math.isclose(mean, 1.0 / p.mu, rel_tol=_MOMENT_MATCH_RTOL)
            and math.isclose(m2, p.k_var / p.mu**2, rel_tol=_MOMENT_MATCH_RTOL)
        ):
            raise InvalidConfig(
                "service spec moments do not match params: expected "
                f"({1.0 / p.mu}, {p.k_var / p.mu**2}), got ({mean}, {m2})"
            )


@dataclass(frozen=True)
class SimEstimate:
    """Point estimate with a 95% batch-means half-width."""

    mean: float
    half_width: float
    n_observations: int

    def covers(self, target: float) -> bool:
        return abs(self.mean - target) <= self.half_width


@dataclass(frozen=True)
class SimResult:
    """Waiting-time estimates from one run.

    Per-class fields are None when that class saw fewer observations than
    the batch count (e.g. the premium class at phi=0).  The average
    estimate pools both classes in arrival order, so its mean equals the
    observation-count-weighted combination of the class means.
    """

    config: SimConfig
    wait_premium: SimEstimate | None
    wait_ordinary: SimEstimate | None
    wait_average: SimEstimate

    def to_record(self) -> dict:
        p = self.config.params
        wp, wo = self.wait_premium, self.wait_ordinary
        return {
            "discipline": self.config.discipline,
            "phi": self.config.phi,
            "rho": p.rho,
            "k": p.k_var,
            "wp_mean": wp.mean if wp else math.nan,
            "wp_hw": wp.half_width if wp else math.nan,
            "wo_mean": wo.mean if wo else math.nan,
            "wo_hw": wo.half_width if wo else math.nan,
            "w_mean": self.wait_average.mean,
            "w_hw": self.wait_average.half_width,
            "n": self.wait_average.n_observations,
            "seed": self.config.seed,
        }


def sample_service(
    spec: ServiceSpec, rng: np.random.Generator, size: int | None = None
):
    """Draw service durations from the spec's family, advancing rng.

    Returns a float for size=None, else an ndarray of length size.
    """
    n = 1 if size is None else size
    if spec.family == "deterministic":
        out = np.full(n, spec.mean)
    elif spec.family == "exponential":
        out = rng.exponential(1.0 / spec.rate, n)
    elif spec.family == "gamma":
        out = rng.gamma(spec.shape, spec.scale, n)
    elif spec.family == "hyperexponential":
        branch = rng.random(n) < spec.branch_prob
        raw = rng.exponential(1.0, n)
        out = np.where(branch, raw / spec.rate1, raw / spec.rate2)
    else:
        raise InvalidConfig(f"unknown service family {spec.family!r}")
    return float(out[0]) if size is None else out


def batch_means(observations, n_batches: int) -> SimEstimate:
    """Batch-means estimate of a steady-state mean with a 95% t-interval.

    The point estimate is the plain sample mean (identical to the mean of
    batch means when the batches divide evenly); the half-width uses the
    t quantile with n_batches - 1 degrees of freedom on the batch means.
    """
    obs = np.asarray(observations, dtype=np.float64)
    if n_batches < 10:
        raise InsufficientData(f"need at least 10 batches, got {n_batches}")
    if obs.size < n_batches:
        raise InsufficientData(
            f"{obs.size} observations cannot fill {n_batches} batches"
        )
    bm = np.array([b.mean() for b in np.array_split(obs, n_batches)])
    sd = bm.std(ddof=1)
    tq = stats.t.ppf(0.975, n_batches - 1)
    return SimEstimate(
        mean=float(obs.mean()),
        half_width=float(tq * sd / math.sqrt(n_batches)),
        n_observations=int(obs.size),
    )


def gap_estimate(result: SimResult) -> SimEstimate:
    """Estimated class gap W_o - W_p with a conservative combined half-width.

    Half-widths add in quadrature; with common random numbers the class
    estimates are positively correlated, so this overstates the interval.
    Requires both per-class estimates to be present.
    """
    wp, wo = result.wait_premium, result.wait_ordinary
    if wp is None or wo is None:
        raise InsufficientData("both classes need estimates to form a gap")
    return SimEstimate(
        mean=wo.mean - wp.mean,
        half_width=math.hypot(wo.half_width, wp.half_width),
        n_observations=min(wp.n_observations, wo.n_observations),
    )


@njit(cache=True)
def _event_loop(arrival_times, is_premium, service, preemptive):  # pragma: no cover
    """Single-server two-class priority queue over pre-drawn variates.

    Returns per-customer waits (sojourn minus requirement), the total time
    each customer actually held the server, and its count of service
    episodes; the latter two feed the lost-work check.
    """
    n = arrival_times.shape[0]
    waits = np.empty(n, np.float64)
    served = np.zeros(n, np.float64)
    segments = np.ones(n, np.int64)  # service episodes; grows on preemption
    remaining = service.copy()

    cap = n + 2
    qp = np.empty(cap, np.int64)  # premium FIFO ring buffer
    qo = np.empty(cap, np.int64)  # ordinary ring buffer; front-push on preemption
    qp_head = 0
    qp_tail = 0
    qo_head = 0
    qo_tail = 0

    cur = -1
    start = 0.0
    completion = np.inf
    i = 0
    done = 0
    while done < n:
        next_arrival = arrival_times[i] if i < n else np.inf
        if cur >= 0 and completion < next_arrival:
            # departure; arrivals win ties so equality falls to the else branch
            t = completion
            served[cur] += t - start
            waits[cur] = t - arrival_times[cur] - service[cur]
            done += 1
            if qp_tail > qp_head:
                cur = qp[qp_head % cap]
                qp_head += 1
            elif qo_tail > qo_head:
                cur = qo[qo_head % cap]
                qo_head += 1
            else:
                cur = -1
            if cur >= 0:
                start = t
                completion = t + remaining[cur]
            else:
                completion = np.inf
        else:
            t = next_arrival
            c = i
            i += 1
            if cur < 0:
                cur = c
                start = t
                completion = t + remaining[c]
            elif preemptive and is_premium[c] and not is_premium[cur]:
                served[cur] += t - start
                remaining[cur] = completion - t
                segments[cur] += 1
                qo_head -= 1  # preempted customer resumes ahead of its class
                qo[qo_head % cap] = cur
                cur = c
                start = t
                completion = t + remaining[c]
            elif is_premium[c]:
                qp[qp_tail % cap] = c
                qp_tail += 1
            else:
                qo[qo_tail % cap] = c
                qo_tail += 1
    return waits, served, segments


def _draw_inputs(config: SimConfig):
    streams = np.random.SeedSequence(config.seed).spawn(3)
    rng_gap, rng_class, rng_service = (np.random.default_rng(s) for s in streams)
    n = config.n_arrivals
    arrival_times = np.cumsum(rng_gap.exponential(1.0 / config.params.lam, n))
    is_premium = rng_class.random(n) < config.phi
    service = sample_service(config.service, rng_service, n)
    return arrival_times, is_premium, service


def run_sim(config: SimConfig) -> SimResult:
    """Simulate the configured queue and return batch-means wait estimates.

    The first ``warmup_arrivals`` customers are discarded; the remaining
    per-customer waits, in arrival order, form the pooled average stream
    and its two class substreams.  A class with fewer observations than
    the batch count is reported as None.
    """
    arrival_times, is_premium, service = _draw_inputs(config)
    waits, served, segments = _event_loop(
        arrival_times, is_premium, service, config.discipline == "pr"
    )
    # each service segment is a difference of absolute event times, so the
    # per-customer tolerance scales with segment count and the time horizon
    horizon = float(arrival_times[-1]) + float(service.sum())
    tol = (2.0 * segments + 2.0) * 2.3e-16 * horizon + 1e-12
    bad = np.abs(served - service) > tol
    if bad.any():
        worst = int(np.argmax(np.abs(served - service) - tol))
        raise RuntimeError(
            "preemption bookkeeping lost work: customer "
            f"{worst} served {served[worst]} of requirement {service[worst]}"
        )

    obs = waits[config.warmup_arrivals :]
    prem = is_premium[config.warmup_arrivals :]
    average = batch_means(obs, config.n_batches)

    def class_estimate(mask) -> SimEstimate | None:
        stream = obs[mask]
        if stream.size < config.n_batches:
            return None
        return batch_means(stream, config.n_batches)

    return SimResult(
        config=config,
        wait_premium=class_estimate(prem),
        wait_ordinary=class_estimate(~prem),
        wait_average=average,
    )
