"""Exception types raised across the package."""


class QueueGameError(Exception):
    """Base class for all mg1game errors."""


class NonPositiveRate(QueueGameError, ValueError):
    """Arrival or service rate is not strictly positive."""


class UnstableLoad(QueueGameError, ValueError):
    """Traffic load rho = lambda/mu is >= 1; the queue has no steady state."""


class InfeasibleVariance(QueueGameError, ValueError):
    """Variance parameter K violates E[S^2] >= E[S]^2, or the requested
    service family cannot realize it."""


class NegativeCost(QueueGameError, ValueError):
    """Premium fee C is negative."""


class NotApplicable(QueueGameError, ValueError):
    """Requested quantity is undefined for these parameters
    (e.g. the critical load threshold for K <= 2)."""


class DegenerateCurve(QueueGameError, ValueError):
    """The cost curve is constant in phi, so C(phi) = C has no unique root."""


class InvalidConfig(QueueGameError, ValueError):
    """Malformed simulation or file configuration."""


class InsufficientData(QueueGameError, ValueError):
    """Too few observations for the requested batch-means estimate."""


class NotAnEquilibrium(QueueGameError, ValueError):
    """The probed point is not a member of the equilibrium set."""
