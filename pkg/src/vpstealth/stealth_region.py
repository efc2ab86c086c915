"""Stealth constraints at Warren, the achievable (alpha, beta) region, and
message/key size bounds for coded stealth communication."""

from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass
from typing import NamedTuple

from .binary_channel import (
    BernoulliDist,
    BscChannel,
    DomainError,
    VpProfile,
    chi2_distance,
    kl_divergence,
    output_marginal,
    vp_input_dist,
)
from .exponents import r_alpha_max

DEFAULT_DELTA = 0.01
DEFAULT_THETA = 0.02
DEFAULT_XI = 0.01

# relative slack for comparing energies that agree up to rounding (a*n^alpha vs k*sqrt(n))
_REL_TOL = 1e-12


@dataclass(frozen=True)
class StealthBudget:
    delta: float = DEFAULT_DELTA
    theta: float | None = None

    def __post_init__(self):
        if not self.delta > 0:
            raise DomainError("delta must be positive")
        if self.theta is not None and not self.theta > self.delta:
            raise DomainError("coded budget theta must exceed delta")

    @classmethod
    def coded(cls, theta: float = DEFAULT_THETA, delta: float | None = None) -> "StealthBudget":
        """Budget for coded analyses; delta defaults to theta/2."""
        return cls(delta=theta / 2 if delta is None else delta, theta=theta)


@dataclass(frozen=True)
class StealthScenario:
    """Information profile (a, alpha), optional obfuscation (b, beta), Bob's p, Warren's q.

    ``obf=None`` is the covert case: Alice is silent when not communicating.
    """

    info: VpProfile
    bob: BscChannel
    warren: BscChannel
    obf: VpProfile | None = None
    budget: StealthBudget = StealthBudget()

    def info_energy(self, n: int) -> float:
        return self.info.energy(n)

    def obf_energy(self, n: int) -> float:
        return 0.0 if self.obf is None else self.obf.energy(n)

    def obf_input(self, n: int) -> BernoulliDist:
        return BernoulliDist(0.0) if self.obf is None else vp_input_dist(self.obf, n)

    def to_dict(self) -> dict:
        return asdict(self)


class UncodedDivergence(NamedTuple):
    exact: float
    quadratic: float


def uncoded_divergence(scenario: StealthScenario, n: int) -> UncodedDivergence:
    """n D(P_Z,n || P_Zo,n) and its second-order approximation.

    ``exact`` is ``inf`` when Warren's channel is noiseless and the supports differ.
    """
    q = scenario.warren.crossover
    pz = output_marginal(vp_input_dist(scenario.info, n), scenario.warren)
    pzo = output_marginal(scenario.obf_input(n), scenario.warren)
    try:
        exact = n * kl_divergence(pz, pzo)
    except DomainError:
        exact = math.inf
    gap = scenario.info.prob(n) - (0.0 if scenario.obf is None else scenario.obf.prob(n))
    if q == 0.0:
        quadratic = 0.0 if gap == 0.0 else math.inf
    else:
        quadratic = n * 0.5 * (1.0 - 2.0 * q) ** 2 / (q * (1.0 - q)) * gap**2
    return UncodedDivergence(exact, quadratic)


def k_constant(warren: BscChannel, delta: float) -> float:
    """sqrt(2 q qbar)/(qbar - q) * sqrt(delta); ``inf`` for a useless channel (q = 1/2)."""
    q = warren.crossover
    if delta < 0:
        raise DomainError("delta must be nonnegative")
    if q == 0.5:
        return math.inf
    return math.sqrt(2.0 * q * (1.0 - q)) / (1.0 - 2.0 * q) * math.sqrt(delta)


def k_constant_chi2(warren: BscChannel, delta: float) -> float:
    """The same constant written as sqrt(2 / chi2(P_Z|X(.|1), P_Z|X(.|0))) * sqrt(delta)."""
    chi2 = chi2_distance(warren.row(1), warren.row(0))
    if chi2 == 0.0:
        return math.inf
    return math.sqrt(2.0 / chi2) * math.sqrt(delta)


def uncoded_stealth_check(scenario: StealthScenario, n: int) -> bool:
    """|a n^alpha - b n^beta| <= k sqrt(n) at blocklength ``n``."""
    k = k_constant(scenario.warren, scenario.budget.delta)
    lhs = abs(scenario.info_energy(n) - scenario.obf_energy(n))
    rhs = k * math.sqrt(n)
    return lhs <= rhs * (1.0 + _REL_TOL)


@dataclass(frozen=True)
class RegionRow:
    beta: float
    alpha_max: float
    coeff_constraint: str


@dataclass
class RegionReport:
    q: float
    delta: float
    k: float
    rows: list[RegionRow]

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "delta": self.delta,
            "k": self.k,
            "rows": [asdict(r) for r in self.rows],
        }


def region_row(beta: float, k: float) -> RegionRow:
    """Largest alpha meeting the uncoded constraint for all large n, given beta.

    The dominant term of |a n^alpha - b n^beta| must grow no faster than k sqrt(n).
    """
    if not (0.0 <= beta <= 1.0):
        raise DomainError(f"beta must lie in [0, 1], got {beta!r}")
    if math.isinf(k):
        return RegionRow(beta, 1.0, "unconstrained")
    if k == 0.0:
        return RegionRow(beta, beta, "a = b")
    if beta < 0.5:
        return RegionRow(beta, 0.5, "a <= k")
    if beta == 0.5:
        return RegionRow(beta, 0.5, "|a - b| <= k")
    return RegionRow(beta, beta, "a = b")


def achievable_region(beta_grid, warren: BscChannel, delta: float) -> RegionReport:
    k = k_constant(warren, delta)
    rows = [region_row(float(beta), k) for beta in beta_grid]
    return RegionReport(q=warren.crossover, delta=delta, k=k, rows=rows)


def covert_scaling_constant(bob: BscChannel, warren: BscChannel, delta: float) -> float:
    """Square-root-law constant k (1-2p) ln(pbar/p) with a = k, alpha = 1/2."""
    p, q = bob.crossover, warren.crossover
    if not 0.0 < q < 0.5:
        raise DomainError("Warren's crossover must lie in (0, 1/2)")
    if p == 0.5:
        return 0.0
    if p == 0.0:
        raise DomainError("Bob's crossover must be positive")
    return k_constant(warren, delta) * r_alpha_max(1.0, bob)


@dataclass(frozen=True)
class RateKeyReport:
    n: int
    r_alpha_max_info: float
    warren_threshold: float
    log_m_bound: float
    log_k_bound: float
    xi: float
    keyless_feasible: bool

    def to_dict(self) -> dict:
        return asdict(self)


def rate_key_bounds(scenario: StealthScenario, xi: float = DEFAULT_XI, n: int = 1) -> RateKeyReport:
    """Largest log M and smallest log K (nats) at blocklength ``n``.

    The caller is responsible for (a, alpha) meeting the uncoded stealth
    constraint for the chosen budget.
    """
    if not xi > 0:
        raise DomainError("xi must be positive")
    if xi >= 0.1:
        warnings.warn(f"xi = {xi} is not small; the bounds are loose", stacklevel=2)
    a = scenario.info.coeff
    na = float(n) ** scenario.info.expo
    bob_max = r_alpha_max(a, scenario.bob)
    warren_thr = r_alpha_max(a, scenario.warren)
    log_m = na * (1.0 - xi) * bob_max
    log_k = na * max((1.0 + xi) * warren_thr - (1.0 - xi) * bob_max, 0.0)
    return RateKeyReport(
        n=n,
        r_alpha_max_info=bob_max,
        warren_threshold=warren_thr,
        log_m_bound=log_m,
        log_k_bound=log_k,
        xi=xi,
        keyless_feasible=log_k == 0.0,
    )
