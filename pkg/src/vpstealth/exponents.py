"""Gallager exponents and their vanishing-power (VP) counterparts for the BSC.

Channel-coding exponents use rho in [0, 1]; resolvability exponents use
rho in [-1/2, 0]. The VP closed form holds only for expo < 1; at expo = 1
use :func:`gallager_e0` directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .binary_channel import BernoulliDist, BscChannel, DomainError, entropy_increment
from .search import maximize_unimodal, minimize_unimodal


class ExponentResult(NamedTuple):
    exponent: float
    rho: float


class ResolvabilityBound(NamedTuple):
    """Upper bound on the codebook-averaged divergence to the i.i.d. output.

    ``value`` is exp(n^alpha * ER_hat) / (-rho) with the exponent held at its
    infimum, which is smallest at rho = -1/2. ``coupled`` keeps rho shared
    between the exponent and the 1/(-rho) factor and is never smaller.
    ``vacuous`` is set when the scaling constant does not exceed the
    resolvability threshold; ``value`` is then 2 and carries no information.
    """

    value: float
    rho: float
    exponent: float
    coupled: float
    vacuous: bool


@dataclass
class ExponentCurve:
    kind: str
    rho: list[float]
    values: list[float]
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.rho) != len(self.values):
            raise ValueError("rho grid and values differ in length")
        if any(b <= a for a, b in zip(self.rho, self.rho[1:])):
            raise ValueError("rho grid must be strictly increasing")


def gallager_e0(rho: float, input: BernoulliDist, ch: BscChannel) -> float:
    """E_0(rho, P_X) for a BSC, in nats.

    The sum over outputs is written as 1 + pbar*expm1(A) + p*expm1(B) so that
    inputs with tiny P_X(1) keep full relative precision.
    """
    if not (0.0 <= rho <= 1.0):
        raise DomainError(f"rho must lie in [0, 1], got {rho!r}")
    p, eps = ch.crossover, input.p1
    if rho == 0.0 or p == 0.5 or eps == 0.0:
        return 0.0
    pb = 1.0 - p
    s = 1.0 / (1.0 + rho)
    if p == 0.0:
        return -math.log((1.0 - eps) ** (1.0 + rho) + eps ** (1.0 + rho))
    # ((1-eps) pb^s + eps p^s)^(1+rho) = pb * (1 + eps*u0)^(1+rho), likewise for y=1
    u0 = (p / pb) ** s - 1.0
    u1 = (pb / p) ** s - 1.0
    A = (1.0 + rho) * math.log1p(eps * u0)
    B = (1.0 + rho) * math.log1p(eps * u1)
    return -math.log1p(pb * math.expm1(A) + p * math.expm1(B))


def mutual_information(input: BernoulliDist, ch: BscChannel) -> float:
    p = ch.crossover
    return entropy_increment(p, (1.0 - 2.0 * p) * input.p1)


def gallager_eg(r: float, input: BernoulliDist, ch: BscChannel) -> ExponentResult:
    """max over rho in [0, 1] of E_0(rho) - rho*r."""
    if r < 0:
        raise DomainError("rate must be nonnegative")
    rho, val = maximize_unimodal(lambda t: gallager_e0(t, input, ch) - t * r, 0.0, 1.0)
    return ExponentResult(max(val, 0.0), rho)


def e0_hat_alpha(rho, a: float, ch: BscChannel, alpha: float | None = None):
    """Limit of (n/n^alpha) E_0(rho, P_X,n) for expo < 1.

    Accepts scalar or array ``rho``. The formula extends to rho in [-1/2, 0),
    where it is negative. Passing ``alpha=1`` raises: that branch is E_0 itself.
    """
    if alpha is not None and alpha >= 1.0:
        raise DomainError("the VP closed form needs alpha < 1; use gallager_e0 for alpha = 1")
    if not a > 0:
        raise DomainError("coefficient a must be positive")
    p = ch.crossover
    pb = 1.0 - p
    r = np.asarray(rho, dtype=float)
    if np.any(r < -0.5) or np.any(r > 1.0):
        raise DomainError("rho must lie in [-1/2, 1]")
    if p == 0.0 and np.any(r < 0):
        raise DomainError("negative rho diverges at p = 0")
    s = 1.0 / (1.0 + r)
    with np.errstate(divide="ignore"):
        val = (1.0 + r) * a * (pb**s - p**s) * (pb ** (r * s) - p ** (r * s))
    return float(val) if np.ndim(val) == 0 else val


def eg_hat_alpha(r_alpha: float, a: float, ch: BscChannel) -> ExponentResult:
    if r_alpha < 0:
        raise DomainError("scaling constant must be nonnegative")
    rho, val = maximize_unimodal(lambda t: e0_hat_alpha(t, a, ch) - t * r_alpha, 0.0, 1.0)
    return ExponentResult(max(val, 0.0), rho)


def r_alpha_max(a: float, ch: BscChannel) -> float:
    """Largest scaling constant with a positive modified exponent: a(1-2p)ln(pbar/p)."""
    p = ch.crossover
    if p == 0.5:
        return 0.0
    if p == 0.0:
        return math.inf
    return a * (1.0 - 2.0 * p) * math.log((1.0 - p) / p)


def er_hat_alpha(rho, a: float, ch: BscChannel):
    """Modified resolvability exponent on rho in [-1/2, 0]."""
    r = np.asarray(rho, dtype=float)
    if np.any(r < -0.5) or np.any(r > 0.0):
        raise DomainError("resolvability rho must lie in [-1/2, 0]")
    if ch.crossover == 0.0:
        raise DomainError("resolvability exponents need crossover > 0")
    return -e0_hat_alpha(rho, a, ch)


def resolvability_threshold(a: float, ch: BscChannel) -> float:
    """a(1-2q)ln(qbar/q): smallest codebook scaling constant that drives the excess divergence to zero."""
    return r_alpha_max(a, ch)


def er_cap_alpha(r_mk: float, a: float, ch: BscChannel) -> ExponentResult:
    """inf over rho in [-1/2, 0] of Er_hat(rho) + rho * r_mk.

    Negative exactly when ``r_mk`` exceeds :func:`resolvability_threshold`.
    """
    if r_mk < 0:
        raise DomainError("scaling constant must be nonnegative")
    rho, val = minimize_unimodal(lambda t: float(er_hat_alpha(t, a, ch)) + t * r_mk, -0.5, 0.0)
    return ExponentResult(val, rho)


def resolvability_divergence_bound(
    n: int, alpha: float, r_mk: float, a: float, ch: BscChannel
) -> ResolvabilityBound:
    """Bound E[D(P_Z^n|C || P_Z^n)] <= exp(n^alpha * ER_hat(r_mk)) / (-rho), rho in [-1/2, 0)."""
    if ch.crossover == 0.0:
        raise DomainError("resolvability exponents need crossover > 0")
    na = float(n) ** alpha
    exponent = er_cap_alpha(r_mk, a, ch).exponent

    def log_coupled(t: float) -> float:
        return na * (float(er_hat_alpha(t, a, ch)) + t * r_mk) - math.log(-t)

    # convex on [-1/2, 0) and unbounded at 0
    _, log_c = minimize_unimodal(log_coupled, -0.5, -1e-12)
    return ResolvabilityBound(
        value=2.0 * math.exp(na * exponent),
        rho=-0.5,
        exponent=exponent,
        coupled=math.exp(log_c),
        vacuous=r_mk <= resolvability_threshold(a, ch),
    )


def exponent_curve(kind: str, rho_grid, a: float, ch: BscChannel, input: BernoulliDist | None = None,
                   rate: float = 0.0) -> ExponentCurve:
    """Tabulate one exponent over a rho grid.

    ``kind`` is one of ``E0`` (needs ``input``), ``E0hat``, ``EGhat_terms``
    (E0hat(rho) - rho*rate) or ``Er_hat``.
    """
    rho = [float(x) for x in rho_grid]
    if kind == "E0":
        if input is None:
            raise ValueError("E0 curve needs an input distribution")
        vals = [gallager_e0(t, input, ch) for t in rho]
    elif kind == "E0hat":
        vals = [float(e0_hat_alpha(t, a, ch)) for t in rho]
    elif kind == "EGhat_terms":
        vals = [float(e0_hat_alpha(t, a, ch)) - t * rate for t in rho]
    elif kind == "Er_hat":
        vals = [float(er_hat_alpha(t, a, ch)) for t in rho]
    else:
        raise ValueError(f"unknown curve kind {kind!r}")
    return ExponentCurve(kind, rho, vals, {"p": ch.crossover, "a": a})
