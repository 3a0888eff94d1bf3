from fractions import Fraction

import pytest

from mg1game import (
    ModelParams,
    ServiceSpec,
    errors,
    moments,
    params_from_config,
    params_to_config,
    service_spec_for_k,
    validate,
)
from mg1game.model import config_values


def test_validate_accepts_good_params():
    p = ModelParams(lam=0.5, mu=1.0, k_var=2.0, cost=1.0)
    assert validate(p) is p


def test_rho_at_one_is_unstable():
    with pytest.raises(errors.UnstableLoad):
        ModelParams(lam=1.0, mu=1.0, k_var=2.0, cost=1.0)


def test_k_below_one_is_infeasible():
    with pytest.raises(errors.InfeasibleVariance):
        ModelParams(lam=0.5, mu=1.0, k_var=0.5, cost=1.0)


@pytest.mark.parametrize("lam,mu", [(0.0, 1.0), (-0.5, 1.0), (0.5, 0.0), (0.5, -1.0)])
def test_nonpositive_rates_rejected(lam, mu):
    with pytest.raises(errors.NonPositiveRate):
        ModelParams(lam=lam, mu=mu, k_var=2.0, cost=1.0)


def test_negative_cost_rejected():
    with pytest.raises(errors.NegativeCost):
        ModelParams(lam=0.5, mu=1.0, k_var=2.0, cost=-0.1)


def test_auto_family_dispatch():
    det = service_spec_for_k(1.0, 1.0)
    assert det.family == "deterministic" and det.mean == 1.0 and det.second_moment == 1.0
    exp = service_spec_for_k(1.0, 2.0)
    assert exp.family == "exponential" and exp.rate == 1.0 and exp.second_moment == 2.0
    gam = service_spec_for_k(1.0, 4.0)
    assert gam.family == "gamma"
    assert gam.shape == pytest.approx(Fraction(1, 3), rel=1e-15)
    assert moments(gam) == (pytest.approx(1.0, rel=1e-15), pytest.approx(4.0, rel=1e-15))


def test_moments_closed_forms():
    assert moments(ServiceSpec("deterministic", 2.0, 4.0)) == (2.0, 4.0)
    assert moments(ServiceSpec("exponential", 1.0, 2.0, rate=1.0)) == (1.0, 2.0)
    m, m2 = moments(ServiceSpec("gamma", 1.0, 4.0, shape=1.0 / 3.0, scale=3.0))
    assert m == pytest.approx(1.0, rel=1e-15)
    assert m2 == pytest.approx(4.0, rel=1e-15)  # mean^2 (1 + 1/shape)


@pytest.mark.parametrize("mu", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("k", [1.0, 1.25, 1.5, 2.0, 3.0, 4.0, 10.0, 100.0])
def test_moment_grid_matches_target(mu, k):
    families = ["auto"]
    if k >= 2.0:
        families.append("hyperexp")
    for fam in families:
        spec = service_spec_for_k(mu, k, fam)
        m, m2 = moments(spec)
        assert m == pytest.approx(1.0 / mu, rel=1e-12)
        assert m2 == pytest.approx(k / mu**2, rel=1e-12)
        assert spec.mean == pytest.approx(m, rel=1e-12)
        assert spec.second_moment == pytest.approx(m2, rel=1e-12)


def test_hyperexponential_balanced_means():
    spec = service_spec_for_k(2.0, 4.0, "hyperexp")
    # each branch carries half the mean
    p, q = spec.branch_prob, 1.0 - spec.branch_prob
    assert p / spec.rate1 == pytest.approx(q / spec.rate2, rel=1e-12)
    assert p > 0.5  # fast branch is the likely one


def test_family_constraints():
    with pytest.raises(errors.InfeasibleVariance):
        service_spec_for_k(1.0, 0.9)
    with pytest.raises(errors.InfeasibleVariance):
        service_spec_for_k(1.0, 1.5, "hyperexp")  # balanced H2 needs K >= 2
    with pytest.raises(errors.InfeasibleVariance):
        service_spec_for_k(1.0, 3.0, "det")
    with pytest.raises(errors.InfeasibleVariance):
        service_spec_for_k(1.0, 3.0, "exp")
    with pytest.raises(errors.NonPositiveRate):
        service_spec_for_k(0.0, 2.0)
    with pytest.raises(errors.InvalidConfig):
        service_spec_for_k(1.0, 2.0, "weibull")


def test_config_round_trip():
    p = ModelParams(lam=0.3, mu=1.7, k_var=3.25, cost=0.125)
    text = params_to_config(p)
    assert params_from_config(text) == p


def test_config_parsing():
    values = config_values("# comment\nlambda = 0.5\nmu=1\n\nk=2 # inline\ncost=0\n")
    assert values == {"lam": 0.5, "mu": 1.0, "k_var": 2.0, "cost": 0.0}
    with pytest.raises(errors.InvalidConfig):
        config_values("rho=0.5\n")
    with pytest.raises(errors.InvalidConfig):
        config_values("lambda=fast\n")
    with pytest.raises(errors.InvalidConfig):
        params_from_config("lambda=0.5\nmu=1\n")
    with pytest.raises(errors.UnstableLoad):
        params_from_config("lambda=2\nmu=1\nk=2\ncost=0\n")
