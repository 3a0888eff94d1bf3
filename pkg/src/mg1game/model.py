"""Problem instances and concrete service-time distributions.

A problem instance is a Poisson arrival stream at rate ``lam`` feeding a
single server at rate ``mu``, a dimensionless variance parameter ``k_var``
fixing the second moment of service at ``k_var / mu**2``, and a premium fee
``cost`` measured in units of expected waiting time.  ``k_var = 1`` is
deterministic service and ``k_var = 2`` exponential; ``k_var - 1`` is the
squared coefficient of variation.

All closed forms downstream depend on the service distribution only through
``(mu, k_var)``.  For simulation, :func:`service_spec_for_k` synthesizes an
explicit distribution matching that pair, so the distribution-freeness of
the analytics can be checked empirically with more than one family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    InfeasibleVariance,
    InvalidConfig,
    NegativeCost,
    NonPositiveRate,
    UnstableLoad,
)

__all__ = [
    "ModelParams",
    "ServiceSpec",
    "validate",
    "service_spec_for_k",
    "moments",
    "config_values",
    "params_from_config",
    "params_to_config",
]


def _check_params(lam: float, mu: float, k_var: float, cost: float) -> None:
    if lam <= 0:
        raise NonPositiveRate(f"arrival rate must be > 0, got lambda={lam}")
    if mu <= 0:
        raise NonPositiveRate(f"service rate must be > 0, got mu={mu}")
    if lam / mu >= 1:
        raise UnstableLoad(f"rho = lambda/mu = {lam / mu} must be < 1")
    if k_var < 1:
        raise InfeasibleVariance(
            f"K={k_var} < 1 is impossible: E[S^2] >= E[S]^2 forces K >= 1"
        )
    if cost < 0:
        raise NegativeCost(f"premium fee must be >= 0, got C={cost}")


@dataclass(frozen=True)
class ModelParams:
    """One economic-queueing instance.

    lam
        Mean arrival rate (customers per unit time), > 0.
    mu
        Mean service rate (per unit time), > 0; mean service time is 1/mu.
    k_var
        Variance parameter K >= 1; second moment of service is K/mu^2.
    cost
        Premium fee C >= 0, in units of expected waiting time.
    """

    lam: float
    mu: float
    k_var: float
    cost: float = 0.0

    def __post_init__(self) -> None:
        _check_params(self.lam, self.mu, self.k_var, self.cost)

    @property
    def rho(self) -> float:
        """Traffic load lambda/mu, in (0, 1)."""
        return self.lam / self.mu

    def with_cost(self, cost: float) -> "ModelParams":
        return ModelParams(self.lam, self.mu, self.k_var, cost)


def validate(params: ModelParams) -> ModelParams:
    """Re-check all instance invariants and return the instance unchanged.

    Construction already validates; this is the explicit gate for values
    built by deserialization or tooling.
    """
    _check_params(params.lam, params.mu, params.k_var, params.cost)
    return params


# --- flat key=value config files ------------------------------------------

_CONFIG_KEYS = {"lambda": "lam", "mu": "mu", "k": "k_var", "cost": "cost"}
_KEY_ORDER = ("lambda", "mu", "k", "cost")


def config_values(text: str) -> dict[str, float]:
    """Parse ``key=value`` lines into a field dict (keys lam/mu/k_var/cost).

    Blank lines and ``#`` comments are ignored.  Unknown keys are an error.
    """
    values: dict[str, float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidConfig(f"line {lineno}: expected key=value, got {raw!r}")
        key, _, val = line.partition("=")
        key = key.strip()
        if key not in _CONFIG_KEYS:
            raise InvalidConfig(
                f"line {lineno}: unknown key {key!r} (expected one of {_KEY_ORDER})"
            )
        try:
            values[_CONFIG_KEYS[key]] = float(val.strip())
        except ValueError as exc:
            raise InvalidConfig(f"line {lineno}: bad number {val.strip()!r}") from exc
    return values


def params_from_config(text: str) -> ModelParams:
    """Build validated ModelParams from config text with keys lambda/mu/k/cost."""
    values = config_values(text)
    missing = [k for k, f in _CONFIG_KEYS.items() if f not in values]
    if missing:
        raise InvalidConfig(f"config missing keys: {', '.join(missing)}")
    return ModelParams(**values)


def params_to_config(params: ModelParams) -> str:
    """Serialize to the flat key=value form accepted by params_from_config."""
    fields = {"lambda": params.lam, "mu": params.mu, "k": params.k_var, "cost": params.cost}
    return "".join(f"{key}={fields[key]!r}\n" for key in _KEY_ORDER)


# --- concrete service distributions ----------------------------------------

_FAMILY_ALIASES = {
    "det": "deterministic",
    "deterministic": "deterministic",
    "exp": "exponential",
    "exponential": "exponential",
    "gamma": "gamma",
    "hyperexp": "hyperexponential",
    "hyperexponential": "hyperexponential",
    "auto": "auto",
}

_K_EQ_TOL = 1e-12


@dataclass(frozen=True)
class ServiceSpec:
    """A parameterized service-time distribution with its target moments.

    Exactly one parameter group is populated, per ``family``:
    deterministic uses ``mean`` alone; exponential uses ``rate``; gamma uses
    ``shape``/``scale``; hyperexponential (two-branch, balanced means) uses
    ``branch_prob``/``rate1``/``rate2``.
    """

    family: str
    mean: float
    second_moment: float
    shape: float | None = None
    scale: float | None = None
    rate: float | None = None
    branch_prob: float | None = None
    rate1: float | None = None
    rate2: float | None = None


def moments(spec: ServiceSpec) -> tuple[float, float]:
    """Closed-form (mean, second moment) computed from the family parameters."""
    if spec.family == "deterministic":
        return spec.mean, spec.mean * spec.mean
    if spec.family == "exponential":
        m = 1.0 / spec.rate
        return m, 2.0 * m * m
    if spec.family == "gamma":
        m = spec.shape * spec.scale
        return m, spec.shape * (spec.shape + 1.0) * spec.scale * spec.scale
    if spec.family == "hyperexponential":
        p, q = spec.branch_prob, 1.0 - spec.branch_prob
        m = p / spec.rate1 + q / spec.rate2
        m2 = 2.0 * p / spec.rate1**2 + 2.0 * q / spec.rate2**2
        return m, m2
    raise InvalidConfig(f"unknown service family {spec.family!r}")


def service_spec_for_k(mu: float, k_var: float, family: str = "auto") -> ServiceSpec:
    """Synthesize a service distribution with mean 1/mu and second moment K/mu^2.

    The default family per K: deterministic at K=1, exponential at K=2, and
    gamma with shape 1/(K-1) otherwise (one continuous family spanning all
    K > 1).  A two-branch hyperexponential with balanced means is available
    for K >= 2 as an alternative high-variance family.
    """
    if mu <= 0:
        raise NonPositiveRate(f"service rate must be > 0, got mu={mu}")
    if k_var < 1:
        raise InfeasibleVariance(f"K={k_var} < 1 has no realizable distribution")
    try:
        fam = _FAMILY_ALIASES[family.lower()]
    except KeyError:
        raise InvalidConfig(
            f"unknown family {family!r}; expected one of {sorted(set(_FAMILY_ALIASES))}"
        ) from None

    mean = 1.0 / mu
    m2 = k_var / (mu * mu)

    if fam == "auto":
        if abs(k_var - 1.0) <= _K_EQ_TOL:
            fam = "deterministic"
        elif abs(k_var - 2.0) <= _K_EQ_TOL:
            fam = "exponential"
        else:
            fam = "gamma"

    if fam == "deterministic":
        if abs(k_var - 1.0) > _K_EQ_TOL:
            raise InfeasibleVariance(f"deterministic service forces K=1, got K={k_var}")
        return ServiceSpec("deterministic", mean, mean * mean)
    if fam == "exponential":
        if abs(k_var - 2.0) > _K_EQ_TOL:
            raise InfeasibleVariance(f"exponential service forces K=2, got K={k_var}")
        return ServiceSpec("exponential", mean, m2, rate=mu)
    if fam == "gamma":
        if k_var <= 1.0 + _K_EQ_TOL:
            raise InfeasibleVariance("gamma needs K > 1; use deterministic at K=1")
        shape = 1.0 / (k_var - 1.0)
        scale = (k_var - 1.0) / mu
        return ServiceSpec("gamma", mean, m2, shape=shape, scale=scale)

    # hyperexponential, balanced means: p/r1 = (1-p)/r2, each branch carries
    # half the mean; feasible only for squared CV >= 1, i.e. K >= 2
    if k_var < 2.0 - _K_EQ_TOL:
        raise InfeasibleVariance(
            f"balanced two-branch hyperexponential needs K >= 2, got K={k_var}"
        )
    p = 0.5 * (1.0 + math.sqrt(max(0.0, (k_var - 2.0) / k_var)))
    return ServiceSpec(
        "hyperexponential", mean, m2, branch_prob=p, rate1=2.0 * p * mu, rate2=2.0 * (1.0 - p) * mu
    )
