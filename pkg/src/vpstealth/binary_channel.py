"""Binary distributions, BSCs, and the information measures built on them.

All quantities are in nats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple


class DomainError(ValueError):
    """An argument lies outside the domain where a quantity is defined."""


# below this |x| the series forms are used; truncation error < 1e-20 relative
_SERIES_CUTOFF = 1e-4


@dataclass(frozen=True)
class BernoulliDist:
    """Probability mass on {0, 1}; ``p1`` is the mass on 1."""

    p1: float

    def __post_init__(self):
        if not (0.0 <= self.p1 <= 1.0) or math.isnan(self.p1):
            raise DomainError(f"p1 must lie in [0, 1], got {self.p1!r}")

    @property
    def p0(self) -> float:
        return 1.0 - self.p1

    def pmf(self) -> tuple[float, float]:
        return (1.0 - self.p1, self.p1)


@dataclass(frozen=True)
class BscChannel:
    """Binary symmetric channel with crossover probability in [0, 1/2]."""

    crossover: float

    def __post_init__(self):
        if not (0.0 <= self.crossover <= 0.5) or math.isnan(self.crossover):
            raise DomainError(f"crossover must lie in [0, 1/2], got {self.crossover!r}")

    def row(self, x: int) -> BernoulliDist:
        """Output distribution given input symbol ``x``."""
        return BernoulliDist(self.crossover if x == 0 else 1.0 - self.crossover)


@dataclass(frozen=True)
class VpProfile:
    """Energy ``coeff * n**expo`` spent over a block of length ``n``."""

    coeff: float
    expo: float

    def __post_init__(self):
        if not self.coeff > 0:
            raise DomainError(f"coeff must be positive, got {self.coeff!r}")
        if not (0.0 <= self.expo <= 1.0):
            raise DomainError(f"expo must lie in [0, 1], got {self.expo!r}")

    def energy(self, n: int) -> float:
        return self.coeff * float(n) ** self.expo

    def prob(self, n: int) -> float:
        """Per-symbol probability of a one at blocklength ``n``."""
        if n < 1:
            raise DomainError(f"blocklength must be positive, got {n!r}")
        # coeff * n**(expo - 1) avoids overflow of n**expo for huge n
        return self.coeff * float(n) ** (self.expo - 1.0)


def _xlogx(x: float) -> float:
    return 0.0 if x == 0.0 else x * math.log(x)


def _x_minus_log1p(x: float) -> float:
    """x - log(1 + x), accurate for small |x|."""
    if abs(x) < _SERIES_CUTOFF:
        return x * x * (0.5 - x * (1.0 / 3.0 - x * (0.25 - x / 5.0)))
    return x - math.log1p(x)


def _bregman_log(t: float) -> float:
    """(1 + t) log(1 + t) - t for t >= -1; the t -> -1 limit is 1."""
    if t == -1.0:
        return 1.0
    if abs(t) < _SERIES_CUTOFF:
        return t * t * (0.5 - t * (1.0 / 6.0 - t * (1.0 / 12.0 - t / 20.0)))
    return (1.0 + t) * math.log1p(t) - t


def kl_divergence(P: BernoulliDist, Q: BernoulliDist) -> float:
    """Informational divergence D(P||Q).

    Evaluated as sum_x Q(x) * phi(P(x)/Q(x) - 1) with phi(t) = (1+t)log(1+t) - t;
    every term is nonnegative, so nearby distributions lose no precision.
    """
    # the gap P - Q is formed once from p1 so that 1 - p1 rounding does not leak into it
    gap = P.p1 - Q.p1
    total = 0.0
    for px, qx, g in zip(P.pmf(), Q.pmf(), (-gap, gap)):
        if qx == 0.0:
            if px > 0.0:
                raise DomainError("P is not absolutely continuous w.r.t. Q")
            continue
        total += qx * _bregman_log(max(g / qx, -1.0))
    return total


def variational_distance(P: BernoulliDist, Q: BernoulliDist) -> float:
    return 0.5 * sum(abs(px - qx) for px, qx in zip(P.pmf(), Q.pmf()))


def chi2_distance(P: BernoulliDist, Q: BernoulliDist) -> float:
    if Q.p1 in (0.0, 1.0):
        raise DomainError("chi-squared distance needs Q with full support")
    return sum((px - qx) ** 2 / qx for px, qx in zip(P.pmf(), Q.pmf()))


def binary_entropy(x: float) -> float:
    if not (0.0 <= x <= 1.0):
        raise DomainError(f"binary entropy argument must lie in [0, 1], got {x!r}")
    return -_xlogx(x) - _xlogx(1.0 - x)


def entropy_increment(p: float, delta: float) -> float:
    """H2(p + delta) - H2(p) without catastrophic cancellation.

    Uses the rearrangement
        p*g(delta/p) + (1-p)*g(-delta/(1-p)) + delta*log((1-p-delta)/(p+delta)),
    where g(x) = x - log(1+x) >= 0.
    """
    pb = 1.0 - p
    x = p + delta
    if not (0.0 <= x <= 1.0):
        raise DomainError("p + delta must lie in [0, 1]")
    if p == 0.0 or pb == 0.0 or x in (0.0, 1.0):
        return binary_entropy(x) - binary_entropy(p)
    return (
        p * _x_minus_log1p(delta / p)
        + pb * _x_minus_log1p(-delta / pb)
        + delta * math.log((pb - delta) / x)
    )


def output_marginal(input: BernoulliDist, ch: BscChannel) -> BernoulliDist:
    p = ch.crossover
    return BernoulliDist(p + (1.0 - 2.0 * p) * input.p1)


def vp_input_dist(profile: VpProfile, n: int) -> BernoulliDist:
    prob = profile.prob(n)
    if prob > 1.0:
        raise DomainError(
            f"coeff*n**expo/n = {prob:.6g} exceeds 1 at n={n}; the profile is not a probability"
        )
    return BernoulliDist(prob)


class MutualInfo(NamedTuple):
    exact: float
    taylor: float


def mutual_information_vp(profile: VpProfile, n: int, ch: BscChannel) -> MutualInfo:
    """I(P_X,n; BSC(p)) for a VP input, exactly and to first order in the input weight.

    With p = 0 and a nonzero input the first-order slope is unbounded and
    ``taylor`` is ``inf``.
    """
    eps = vp_input_dist(profile, n).p1
    p = ch.crossover
    exact = entropy_increment(p, (1.0 - 2.0 * p) * eps)
    if p == 0.5 or eps == 0.0:
        return MutualInfo(exact, 0.0)
    if p == 0.0:
        return MutualInfo(exact, math.inf)
    return MutualInfo(exact, (1.0 - 2.0 * p) * eps * math.log((1.0 - p) / p))
