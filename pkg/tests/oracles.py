"""Independent reference implementations used to pin expected test values.

Everything here evaluates the model's closed forms directly, in exact
rational arithmetic (fractions) or 50-digit arithmetic (mpmath), including
the numerically naive variants the library deliberately avoids.  Nothing
imports from mg1game, so agreement is a genuine cross-check.
"""

from fractions import Fraction

import mpmath as mp

mp.mp.dps = 50


def gap_pr(k, rho, mu, phi):
    """Waiting-cost gap E[W_o] - E[W_p] for the PR queue."""
    return (k * rho + (2 - k) * phi * rho * (1 - rho)) / (
        2 * mu * (1 - rho) * (1 - phi * rho)
    )


def avg_pr(k, rho, mu, phi):
    """Population-average PR wait."""
    return (
        rho
        * (k - 2 * phi * rho + (2 - k) * phi * (1 - phi * (1 - rho)))
        / (2 * mu * (1 - rho) * (1 - phi * rho))
    )


def gap_np(k, rho, mu, phi):
    return k * rho * rho / (2 * mu * (1 - rho) * (1 - phi * rho))


def avg_np(k, rho, mu):
    return k * rho / (2 * mu * (1 - rho))


def mixed_phi_pr(k, rho, mu, c):
    """Closed-form root of gap_pr(phi) = c."""
    return (2 * mu * c * (1 - rho) - k * rho) / (rho * (1 - rho) * (2 * mu * c + 2 - k))


def mixed_phi_np(k, rho, mu, c):
    return Fraction(1, 1) / rho - k * rho / (2 * mu * c * (1 - rho))


def critical_load(k):
    return Fraction(k - 2, 2 * k - 2) if isinstance(k, int) else (k - 2) / (2 * k - 2)


def phi_star_naive(rho):
    """(1 - sqrt(1-rho))/rho at 50 digits."""
    rho = mp.mpf(rho)
    return (1 - mp.sqrt(1 - rho)) / rho


def poa_naive(k, rho):
    """Worst-case PoA from the unfactored piecewise expressions, 50 digits."""
    k, rho = mp.mpf(k), mp.mpf(rho)
    spike = 2 - 2 * (1 - rho) ** mp.mpf("1.5") - 3 * rho
    if k == 2:
        return mp.mpf(1)
    if k < 2:
        return (2 - k) * spike / (k * rho**2) + 2 / k
    return k * rho**2 / ((2 - k) * spike + 2 * rho**2)
