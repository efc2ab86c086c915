"""Monte-Carlo runs of the keyed random-coding experiment.

Alice draws M*K codewords i.i.d. from the VP input law, shares a key v with
Bob, and sends codeword (w, v). Bob decodes within subcodebook v by minimum
Hamming distance. Warren sees the BSC(q) output and must tell it apart from
i.i.d. obfuscation.

Every trial gets its own Philox stream keyed by (seed, trial index), so
results do not depend on evaluation order.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.special import logsumexp
from scipy.stats import binomtest

from .binary_channel import BernoulliDist, BscChannel, DomainError, output_marginal, vp_input_dist
from .exponents import gallager_e0, resolvability_divergence_bound
from .oracle import (
    EXACT_CAP,
    error_given_statistics,
    pack,
    sampled_codebook_divergences,
)
from .search import minimize_unimodal
from .stealth_region import StealthScenario, uncoded_divergence

RNG_ALGORITHM = "numpy Philox4x64-10 seeded by SeedSequence(seed, spawn_key=(stream, index))"
# largest m*k*n materialized per trial; beyond it the implicit sampler is used
EXPLICIT_CAP = 2_000_000

_TRIAL_STREAM = 0
_CODEBOOK_STREAM = 1
_WARREN_STREAM = 2


def stream(seed: int, index: int, kind: int = _TRIAL_STREAM) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(kind, index))))


@dataclass(frozen=True)
class Codebook:
    """``words[v, w]`` is the codeword for message w under key v."""

    words: np.ndarray
    source: BernoulliDist

    def __post_init__(self):
        if self.words.ndim != 3:
            raise ValueError("words must have shape (k, m, n)")
        if not np.all((self.words == 0) | (self.words == 1)):
            raise ValueError("codeword symbols must be 0 or 1")

    @property
    def k(self) -> int:
        return self.words.shape[0]

    @property
    def m(self) -> int:
        return self.words.shape[1]

    @property
    def n(self) -> int:
        return self.words.shape[2]

    def subcode(self, v: int) -> np.ndarray:
        return self.words[v]

    def packed(self) -> np.ndarray:
        return pack(self.words)


def generate_codebook(n: int, m: int, k: int, input: BernoulliDist, rng: np.random.Generator) -> Codebook:
    words = (rng.random((k, m, n)) < input.p1).astype(np.uint8)
    return Codebook(words, input)


def transmit(word: np.ndarray, ch: BscChannel, rng: np.random.Generator) -> np.ndarray:
    flips = rng.random(np.shape(word)) < ch.crossover
    return np.asarray(word, dtype=np.uint8) ^ flips.astype(np.uint8)


def ml_decode(y: np.ndarray, subcode: np.ndarray, p: float) -> int:
    """Index of the nearest codeword; ties go to the smallest index.

    Minimum distance is maximum likelihood only for p < 1/2.
    """
    if not p < 0.5:
        raise DomainError("ML decoding over a BSC with crossover >= 1/2 is not supported")
    if len(subcode) == 0:
        raise ValueError("empty subcodebook")
    dist = np.count_nonzero(np.asarray(subcode) != np.asarray(y), axis=1)
    return int(np.argmin(dist))


def gallager_bound(n: int, m: int, input: BernoulliDist, ch: BscChannel) -> tuple[float, float]:
    """min over rho in [0, 1] of (M-1)^rho exp(-n E_0(rho)); returns (bound, rho).

    ``bound`` may exceed 1, in which case it is vacuous.
    """
    if m <= 1:
        return 0.0, 0.0
    log_m1 = math.log(m - 1)
    rho, log_b = minimize_unimodal(lambda r: r * log_m1 - n * gallager_e0(r, input, ch), 0.0, 1.0)
    return math.exp(min(log_b, 700.0)), rho


@dataclass
class TrialConfig:
    scenario: StealthScenario
    n: int
    m: int
    k: int = 1
    trials: int = 100
    seed: int = 0
    fixed_codebook: bool = False
    uniform_message: bool = False
    mode: str = "auto"  # "explicit", "implicit" or "auto"
    trace: bool = False

    def __post_init__(self):
        if self.trials < 1:
            raise DomainError("trials must be at least 1")
        if self.n < 1 or self.m < 1 or self.k < 1:
            raise DomainError("n, m and k must be positive")
        if self.mode not in ("auto", "explicit", "implicit"):
            raise DomainError(f"unknown mode {self.mode!r}")
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must be a 64-bit unsigned integer")

    def resolved_mode(self) -> str:
        if self.mode != "auto":
            return self.mode
        return "explicit" if self.m * self.k * self.n <= EXPLICIT_CAP else "implicit"

    def to_dict(self) -> dict:
        d = asdict(self)
        d["resolved_mode"] = self.resolved_mode()
        return d


@dataclass
class SimReport:
    kind: str
    seed: int
    rng_algorithm: str
    config: dict
    trials: int
    codebooks_sampled: int
    errors: int | None = None
    empirical_error_rate: float | None = None
    ci_low: float | None = None
    ci_high: float | None = None
    ci_half_width: float | None = None
    gallager_bound: float | None = None
    gallager_rho: float | None = None
    bound_vacuous: bool | None = None
    divergence_estimate: float | None = None
    divergence_stderr: float | None = None
    estimator: str | None = None
    excess_divergence_estimate: float | None = None
    excess_divergence_stderr: float | None = None
    uncoded_term: float | None = None
    resolvability_bound: float | None = None
    resolvability_vacuous: bool | None = None
    r_mk: float | None = None
    trace: list = field(default_factory=list)

    def to_dict(self) -> dict:
        d = asdict(self)
        if not self.trace:
            d.pop("trace")
        return d


def _reliability_trial(cfg: TrialConfig, i: int, eps: float, fixed: Codebook | None) -> tuple[int, int, int]:
    """One transmission; returns (key, message, error)."""
    rng = stream(cfg.seed, i)
    bob = cfg.scenario.bob
    v = int(rng.integers(cfg.k))
    w = int(rng.integers(cfg.m)) if cfg.uniform_message else 0
    if cfg.resolved_mode() == "explicit":
        code = fixed if fixed is not None else generate_codebook(cfg.n, cfg.m, cfg.k, BernoulliDist(eps), rng)
        y = transmit(code.words[v, w], bob, rng)
        return v, w, int(ml_decode(y, code.subcode(v), bob.crossover) != w)
    # implicit: draw the sent word and the output, then decide in one draw whether
    # any of the m-1 other i.i.d. codewords beats it
    x = (rng.random(cfg.n) < eps).astype(np.uint8)
    y = transmit(x, bob, rng)
    d_sent = int(np.count_nonzero(x != y))
    p_err = error_given_statistics(cfg.n, cfg.m, eps, int(y.sum()), d_sent, w)
    return v, w, int(rng.random() < p_err)


def run_reliability_trials(cfg: TrialConfig) -> SimReport:
    if cfg.m < 2:
        raise DomainError("error-rate estimation needs m >= 2")
    if cfg.scenario.bob.crossover >= 0.5:
        raise DomainError("Bob's crossover must be below 1/2")
    mode = cfg.resolved_mode()
    if mode == "implicit" and cfg.fixed_codebook:
        raise DomainError("fixed-codebook runs need an explicit codebook")
    input = vp_input_dist(cfg.scenario.info, cfg.n)
    fixed = None
    if cfg.fixed_codebook:
        fixed = generate_codebook(cfg.n, cfg.m, cfg.k, input, stream(cfg.seed, 0, _CODEBOOK_STREAM))

    errors = 0
    trace = []
    for i in range(cfg.trials):
        v, w, err = _reliability_trial(cfg, i, input.p1, fixed)
        errors += err
        if cfg.trace:
            trace.append({"trial": i, "key": v, "message": w, "error": err})

    ci = binomtest(errors, cfg.trials).proportion_ci(confidence_level=0.95, method="wilson")
    bound, rho = gallager_bound(cfg.n, cfg.m, input, cfg.scenario.bob)
    return SimReport(
        kind="reliability",
        seed=cfg.seed,
        rng_algorithm=RNG_ALGORITHM,
        config=cfg.to_dict(),
        trials=cfg.trials,
        codebooks_sampled=1 if fixed is not None else cfg.trials,
        errors=errors,
        empirical_error_rate=errors / cfg.trials,
        ci_low=float(ci.low),
        ci_high=float(ci.high),
        ci_half_width=float(ci.high - ci.low) / 2.0,
        gallager_bound=min(bound, 1.0),
        gallager_rho=rho,
        bound_vacuous=bound >= 1.0,
        trace=trace,
    )


def _mixture_llr(z: np.ndarray, words: np.ndarray, q: float, obf_p1: float, pz_o: BernoulliDist) -> float:
    """log P_Z^n|C(z) - log P_Zo^n(z) for one output and an explicit codebook."""
    n = len(z)
    d = np.count_nonzero(words != z, axis=1)
    log_code = logsumexp(d * math.log(q) + (n - d) * math.log1p(-q)) - math.log(len(words))
    ones = int(z.sum())
    log_obf = ones * math.log(pz_o.p1) + (n - ones) * math.log1p(-pz_o.p1)
    return float(log_code - log_obf)


def warren_statistics(cfg: TrialConfig, cap: int = EXACT_CAP) -> SimReport:
    """How well Warren can tell coded transmission from i.i.d. obfuscation.

    For n <= ``cap`` each sampled codebook is evaluated exactly. Above the cap
    a per-output log-likelihood ratio is averaged over trials: against the
    full codebook mixture while the codebook fits in memory, otherwise the
    i.i.d. plug-in ratio between the two output marginals. Both are labeled
    estimates in ``estimator``.
    """
    sc = cfg.scenario
    warren = sc.warren
    if warren.crossover == 0.0:
        raise DomainError("Warren's crossover must be positive")
    input = vp_input_dist(sc.info, cfg.n)
    obf = sc.obf_input(cfg.n)
    mk = cfg.m * cfg.k
    r_mk = math.log(mk) / float(cfg.n) ** sc.info.expo
    term_b = uncoded_divergence(sc, cfg.n).exact
    bound = resolvability_divergence_bound(cfg.n, sc.info.expo, r_mk, sc.info.coeff, warren)

    pz = output_marginal(input, warren)
    pz_o = output_marginal(obf, warren)
    excess = None
    if cfg.n <= cap:
        total, excess = sampled_codebook_divergences(
            cfg.n, mk, input, warren, obf, cfg.trials, stream(cfg.seed, 0, _WARREN_STREAM)
        )
        estimator = "sampled codebooks, exact divergence per codebook"
        est, se = total.mean, total.stderr
    else:
        samples = []
        explicit = mk * cfg.n <= EXPLICIT_CAP
        for i in range(cfg.trials):
            rng = stream(cfg.seed, i, _WARREN_STREAM)
            if explicit:
                code = generate_codebook(cfg.n, cfg.m, cfg.k, input, rng)
                words = code.words.reshape(mk, cfg.n)
                z = transmit(words[int(rng.integers(mk))], warren, rng)
                samples.append(_mixture_llr(z, words, warren.crossover, obf.p1, pz_o))
            else:
                # a fresh codeword from a fresh codebook is i.i.d. P_X,n
                x = (rng.random(cfg.n) < input.p1).astype(np.uint8)
                z = transmit(x, warren, rng)
                ones = int(z.sum())
                samples.append(ones * math.log(pz.p1 / pz_o.p1)
                               + (cfg.n - ones) * math.log((1 - pz.p1) / (1 - pz_o.p1)))
        arr = np.asarray(samples)
        est = math.fsum(arr) / len(arr)
        se = float(arr.std(ddof=1) / math.sqrt(len(arr))) if len(arr) > 1 else math.nan
        estimator = "mixture log-likelihood ratio" if explicit else "i.i.d. plug-in log-likelihood ratio"

    return SimReport(
        kind="warren",
        seed=cfg.seed,
        rng_algorithm=RNG_ALGORITHM,
        config=cfg.to_dict(),
        trials=cfg.trials,
        codebooks_sampled=cfg.trials,
        divergence_estimate=est,
        divergence_stderr=se,
        estimator=estimator,
        excess_divergence_estimate=None if excess is None else excess.mean,
        excess_divergence_stderr=None if excess is None else excess.stderr,
        uncoded_term=term_b,
        resolvability_bound=bound.value,
        resolvability_vacuous=bound.vacuous,
        r_mk=r_mk,
    )
