"""Cross-check battery run by ``vpstealth validate``.

Each check returns ``(passed, detail)``. The battery is deterministic and
runs in a few seconds on the default profile (p = q = 0.1, a = 1, alpha = 1/2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import binary_channel as bc
from . import exponents as ex
from . import oracle as orc
from . import simulator as sim
from . import stealth_region as sr


@dataclass(frozen=True)
class Profile:
    p: float = 0.1
    q: float = 0.1
    a: float = 1.0
    alpha: float = 0.5
    delta: float = sr.DEFAULT_DELTA
    seed: int = 0


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _pinsker(pr: Profile):
    rng = np.random.default_rng(pr.seed)
    worst = -math.inf
    for P1, Q1 in rng.uniform(0.001, 0.999, size=(500, 2)):
        P, Q = bc.BernoulliDist(P1), bc.BernoulliDist(Q1)
        worst = max(worst, bc.variational_distance(P, Q) ** 2 - 0.5 * bc.kl_divergence(P, Q))
    return worst <= 0.0, f"max V^2 - D/2 = {worst:.3e}"


def _kl_nonneg(pr: Profile):
    grid = np.linspace(0.01, 0.99, 41)
    vals = [bc.kl_divergence(bc.BernoulliDist(x), bc.BernoulliDist(y)) for x in grid for y in grid]
    same = max(bc.kl_divergence(bc.BernoulliDist(x), bc.BernoulliDist(x)) for x in grid)
    return min(vals) >= 0.0 and same <= 1e-12, f"min D = {min(vals):.3e}, max D(P||P) = {same:.1e}"


def _contraction(pr: Profile):
    ch = bc.BscChannel(pr.p)
    err = max(
        abs(abs(bc.output_marginal(bc.BernoulliDist(x), ch).p1 - 0.5) - (1 - 2 * pr.p) * abs(x - 0.5))
        for x in np.linspace(0, 1, 101)
    )
    return err <= 1e-15, f"max deviation {err:.1e}"


def _mi_taylor(pr: Profile):
    ch = bc.BscChannel(pr.p)
    ratios = []
    for e in range(1, 9):
        eps = 10.0**-e
        n = 10**10
        prof = bc.VpProfile(eps * n, 0.0)
        mi = bc.mutual_information_vp(prof, n, ch)
        ratios.append(mi.exact / mi.taylor)
    devs = [abs(r - 1) for r in ratios]
    ok = all(b <= a for a, b in zip(devs, devs[1:])) and devs[-1] < 1e-6
    return ok, f"|exact/taylor - 1| from {devs[0]:.2e} down to {devs[-1]:.2e}"


def _chi2_identity(pr: Profile):
    worst = 0.0
    for q in np.linspace(0.01, 0.49, 49):
        ch = bc.BscChannel(q)
        lhs = bc.chi2_distance(ch.row(1), ch.row(0))
        rhs = (1 - 2 * q) ** 2 / (q * (1 - q))
        worst = max(worst, abs(lhs - rhs) / rhs)
    return worst <= 1e-12, f"max rel. error {worst:.1e}"


def _e0hat_shape(pr: Profile):
    ch = bc.BscChannel(pr.p)
    rho = np.linspace(0, 1, 201)
    v = ex.e0_hat_alpha(rho, pr.a, ch)
    d1 = np.diff(v)
    d2 = np.diff(v, 2)
    ok = v[0] == 0.0 and d1.min() >= -1e-9 and d2.max() <= 1e-9
    return ok, f"E0hat(0) = {v[0]}, min step {d1.min():.2e}, max 2nd diff {d2.max():.2e}"


def _limit(pr: Profile):
    ch = bc.BscChannel(pr.p)
    prof = bc.VpProfile(pr.a, pr.alpha)
    worst = max(
        abs(orc.finite_n_exponent(r, prof, 10**10, ch) / ex.e0_hat_alpha(r, pr.a, ch) - 1)
        for r in np.arange(1, 11) / 10
    )
    return worst <= 1e-3, f"max rel. error at n=1e10: {worst:.2e}"


def _slope(pr: Profile):
    ch = bc.BscChannel(pr.p)
    h = 1e-5
    fd = (ex.e0_hat_alpha(h, pr.a, ch) - ex.e0_hat_alpha(-h, pr.a, ch)) / (2 * h)
    target = ex.r_alpha_max(pr.a, ch)
    rel = abs(fd / target - 1)
    return rel <= 1e-6, f"finite difference {fd:.10f} vs {target:.10f}"


def _eg_threshold(pr: Profile):
    ch = bc.BscChannel(pr.p)
    rmax = ex.r_alpha_max(pr.a, ch)
    below = all(ex.eg_hat_alpha(f * rmax, pr.a, ch).exponent > 0 for f in (0.5, 0.9, 0.99))
    above = all(ex.eg_hat_alpha(f * rmax, pr.a, ch).exponent == 0 for f in (1.0, 1.01, 1.5))
    return below and above, f"R_max = {rmax:.6f}"


def _er_dichotomy(pr: Profile):
    ch = bc.BscChannel(pr.q)
    thr = ex.resolvability_threshold(pr.a, ch)
    zero = max(abs(ex.er_cap_alpha(f * thr, pr.a, ch).exponent) for f in (0.5, 0.9, 1.0))
    neg = max(ex.er_cap_alpha(f * thr, pr.a, ch).exponent for f in (1.01, 1.5, 2.0))
    return zero <= 1e-9 and neg < 0, f"zero side max |E| = {zero:.1e}, negative side max E = {neg:.2e}"


def _uncoded_taylor(pr: Profile):
    n = 10**4
    worst = 0.0
    for e in range(2, 7):
        eps = 10.0**-e
        sc = sr.StealthScenario(bc.VpProfile(eps * n / math.sqrt(n), 0.5), bc.BscChannel(pr.p),
                                bc.BscChannel(pr.q))
        d = sr.uncoded_divergence(sc, n)
        worst = max(worst, abs(d.exact / d.quadratic - 1) / (10 * eps))
    return worst <= 1.0, f"max |ratio - 1| / (10 eps) = {worst:.3f}"


def _k_forms(pr: Profile):
    rng = np.random.default_rng(pr.seed)
    worst = max(
        abs(sr.k_constant(bc.BscChannel(q), pr.delta) - sr.k_constant_chi2(bc.BscChannel(q), pr.delta))
        for q in rng.uniform(0.01, 0.49, 50)
    )
    return worst <= 1e-12, f"max |k - k_chi2| = {worst:.1e}"


def _region(pr: Profile):
    rep = sr.achievable_region(np.linspace(0, 1, 101), bc.BscChannel(pr.q), pr.delta)
    ok = all(r.alpha_max == (0.5 if r.beta <= 0.5 else r.beta) for r in rep.rows)
    return ok, f"{len(rep.rows)} rows, k = {rep.k:.6f}"


def _sqrt_delta(pr: Profile):
    bob, warren = bc.BscChannel(pr.p), bc.BscChannel(pr.q)
    r1 = sr.covert_scaling_constant(bob, warren, pr.delta)
    r2 = sr.covert_scaling_constant(bob, warren, 2 * pr.delta)
    rel = abs(r2 / r1 - math.sqrt(2))
    return rel <= 1e-12, f"ratio {r2 / r1:.15f}"


def _rate_key(pr: Profile):
    ok = True
    for p, q in ((0.1, 0.1), (0.05, 0.2), (0.2, 0.05)):
        sc = sr.StealthScenario(bc.VpProfile(pr.a, pr.alpha), bc.BscChannel(p), bc.BscChannel(q))
        rep = sr.rate_key_bounds(sc, 0.01, n=10**4)
        if rep.log_k_bound > 0:
            need = (10**4) ** pr.alpha * 1.01 * rep.warren_threshold
            ok &= rep.log_m_bound + rep.log_k_bound >= need * (1 - 1e-12)
        ok &= rep.keyless_feasible == (rep.log_k_bound == 0)
    return ok, "total code scaling meets the resolvability threshold"


def _decomposition(pr: Profile):
    worst = 0.0
    ch = bc.BscChannel(pr.q)
    for i in range(10):
        rng = sim.stream(pr.seed, i, kind=7)
        code = sim.generate_codebook(8, 4, 2, bc.BernoulliDist(0.2), rng)
        dec = orc.decomposition_check(code, ch, bc.BernoulliDist(0.05))
        worst = max(worst, abs(dec.residual))
    return worst <= 1e-12, f"max residual {worst:.1e}"


def _tensorization(pr: Profile):
    P, Q = bc.BernoulliDist(0.3), bc.BernoulliDist(0.1)
    n = 10
    d = orc.exact_divergence(orc.exact_iid_dist(P, n), orc.exact_iid_dist(Q, n))
    err = abs(d - n * bc.kl_divergence(P, Q))
    return err <= 1e-12, f"|D(P^n||Q^n) - nD(P||Q)| = {err:.1e}"


def _gallager(pr: Profile):
    ch = bc.BscChannel(pr.p)
    worst = -math.inf
    for i in range(10):
        rng = sim.stream(pr.seed, i, kind=8)
        n, m = 10, 4
        src = bc.BernoulliDist(0.4)
        code = sim.generate_codebook(n, m, 1, src, rng)
        pe = orc.exact_error_probability(code, 0, pr.p)
        bound, _ = sim.gallager_bound(n, m, src, ch)
        worst = max(worst, pe - bound)
    return worst <= 0.0, f"max (P_e - bound) = {worst:.3e}"


def _determinism(pr: Profile):
    sc = sr.StealthScenario(bc.VpProfile(pr.a, pr.alpha), bc.BscChannel(pr.p), bc.BscChannel(pr.q))
    cfg = sim.TrialConfig(sc, n=64, m=8, k=2, trials=50, seed=pr.seed)
    a = sim.run_reliability_trials(cfg).to_dict()
    b = sim.run_reliability_trials(cfg).to_dict()
    return a == b, f"{a['errors']} errors in {a['trials']} trials, twice"


CHECKS: list[tuple[str, Callable[[Profile], tuple[bool, str]]]] = [
    ("pinsker", _pinsker),
    ("kl_nonnegative", _kl_nonneg),
    ("bsc_contraction", _contraction),
    ("mi_first_order", _mi_taylor),
    ("chi2_identity", _chi2_identity),
    ("e0hat_concave", _e0hat_shape),
    ("e0hat_limit", _limit),
    ("r_alpha_max_slope", _slope),
    ("eg_hat_threshold", _eg_threshold),
    ("er_dichotomy", _er_dichotomy),
    ("uncoded_taylor", _uncoded_taylor),
    ("k_chi2_form", _k_forms),
    ("region_staircase", _region),
    ("covert_sqrt_delta", _sqrt_delta),
    ("rate_key_sum", _rate_key),
    ("decomposition_identity", _decomposition),
    ("tensorization", _tensorization),
    ("gallager_dominance", _gallager),
    ("simulation_determinism", _determinism),
]


def run_checks(profile: Profile | None = None) -> list[CheckResult]:
    profile = profile or Profile()
    results = []
    for name, fn in CHECKS:
        try:
            ok, detail = fn(profile)
        except Exception as exc:  # a crashing check is a failed check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(name, bool(ok), detail))
    return results
