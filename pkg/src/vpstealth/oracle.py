"""Brute-force ground truth at small blocklengths.

Every distribution over {0,1}^n is held as a dense vector indexed by the
integer whose bit i is symbol i. Reductions go through ``math.fsum``.
Quantities averaged over random codebooks are Monte-Carlo estimates and are
returned as :class:`SampledEstimate`, never as exact values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, NamedTuple

import numpy as np
from scipy.stats import binom

from .binary_channel import (
    BernoulliDist,
    BscChannel,
    DomainError,
    VpProfile,
    binary_entropy,
    kl_divergence,
    output_marginal,
    vp_input_dist,
)
from .exponents import gallager_e0

if TYPE_CHECKING:
    from .simulator import Codebook

EXACT_CAP = 20
# entries per (codeword chunk x outputs) block
_BLOCK = 1 << 22


class ExactCapError(DomainError):
    pass


def check_cap(n: int, cap: int = EXACT_CAP) -> None:
    if n > cap:
        raise ExactCapError(
            f"exact enumeration over 2^{n} outputs exceeds the cap n <= {cap}"
        )


@dataclass(frozen=True)
class ExactDist:
    n: int
    probs: np.ndarray

    def __post_init__(self):
        if self.probs.shape != (1 << self.n,):
            raise ValueError("probability vector must have length 2^n")
        if np.any(self.probs < 0):
            raise ValueError("negative probability")
        total = math.fsum(self.probs)
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"probabilities sum to {total!r}, not 1")

    def entropy(self) -> float:
        P = self.probs[self.probs > 0]
        return -math.fsum(P * np.log(P))


class SampledEstimate(NamedTuple):
    mean: float
    stderr: float
    draws: int


def _weights(n: int) -> np.ndarray:
    return np.bitwise_count(np.arange(1 << n, dtype=np.uint64)).astype(np.int64)


def _iid_log_probs(p1: float, n: int) -> np.ndarray:
    w = _weights(n)
    with np.errstate(divide="ignore", invalid="ignore"):
        lp = np.where(w > 0, w * math.log(p1) if p1 > 0 else -np.inf, 0.0)
        lp = lp + np.where(n - w > 0, (n - w) * math.log1p(-p1) if p1 < 1 else -np.inf, 0.0)
    return lp


def pack(words: np.ndarray) -> np.ndarray:
    """Pack rows of 0/1 symbols into integers, symbol i -> bit i."""
    words = np.asarray(words, dtype=np.uint64)
    n = words.shape[-1]
    if n > 63:
        raise DomainError("packing supports n <= 63")
    return (words << np.arange(n, dtype=np.uint64)).sum(axis=-1, dtype=np.uint64)


def mixture_output_dist(values: np.ndarray, counts: np.ndarray, n: int, ch: BscChannel,
                        cap: int = EXACT_CAP) -> ExactDist:
    """Output law of a uniformly chosen codeword, given distinct codewords and multiplicities."""
    check_cap(n, cap)
    q = ch.crossover
    values = np.asarray(values, dtype=np.uint64)
    counts = np.asarray(counts, dtype=float)
    z = np.arange(1 << n, dtype=np.uint64)
    # P(z|x) = qbar^n * (q/qbar)^d(z,x)
    table = (q / (1.0 - q)) ** np.arange(n + 1) if q < 0.5 else np.ones(n + 1)
    acc = np.zeros(1 << n)
    step = max(1, _BLOCK >> n)
    for i in range(0, len(values), step):
        d = np.bitwise_count(values[i:i + step, None] ^ z[None, :])
        acc += counts[i:i + step] @ table[d]
    scale = (1.0 - q) ** n if q < 0.5 else 0.5**n
    probs = acc * (scale / math.fsum(counts))
    return ExactDist(n, probs)


def exact_output_dist(code: "Codebook", ch: BscChannel, cap: int = EXACT_CAP) -> ExactDist:
    check_cap(code.n, cap)
    values, counts = np.unique(code.packed().ravel(), return_counts=True)
    return mixture_output_dist(values, counts, code.n, ch, cap)


def exact_iid_dist(marginal: BernoulliDist, n: int, cap: int = EXACT_CAP) -> ExactDist:
    check_cap(n, cap)
    return ExactDist(n, np.exp(_iid_log_probs(marginal.p1, n)))


def exact_divergence(P: ExactDist, Q: ExactDist) -> float:
    if P.n != Q.n:
        raise ValueError("distributions over different blocklengths")
    support = P.probs > 0
    if np.any(Q.probs[support] == 0):
        raise DomainError("P is not absolutely continuous w.r.t. Q")
    p, q = P.probs[support], Q.probs[support]
    return math.fsum(p * (np.log(p) - np.log(q)))


class Decomposition(NamedTuple):
    total: float
    term_a: float
    term_b: float
    term_c: float

    @property
    def residual(self) -> float:
        return self.total - (self.term_a + self.term_b + self.term_c)


def decompose(P_code: ExactDist, source: BernoulliDist, warren: BscChannel,
              obf_marginal: BernoulliDist) -> Decomposition:
    """Split D(P_Z^n|C || P_Zo^n) into resolvability, i.i.d. mismatch and cross terms."""
    n = P_code.n
    pz = output_marginal(source, warren)
    pzo = output_marginal(obf_marginal, warren)
    lz = _iid_log_probs(pz.p1, n)
    lo = _iid_log_probs(pzo.p1, n)
    Pc = P_code.probs
    support = Pc > 0
    if np.any(np.isinf(lo[support])):
        raise DomainError("coded output not absolutely continuous w.r.t. the obfuscation output")
    lc = np.log(Pc[support])
    total = math.fsum(Pc[support] * (lc - lo[support]))
    term_a = math.fsum(Pc[support] * (lc - lz[support]))
    term_b = n * kl_divergence(pz, pzo)
    ratio = np.where(np.isfinite(lz), lz - lo, 0.0)
    term_c = math.fsum((Pc - np.exp(lz)) * ratio)
    return Decomposition(total, term_a, term_b, term_c)


def decomposition_check(code: "Codebook", warren: BscChannel, obf_marginal: BernoulliDist,
                        tol: float = 1e-12) -> Decomposition:
    """Evaluate the three-term split for one codebook; raise if it does not add up."""
    dec = decompose(exact_output_dist(code, warren), code.source, warren, obf_marginal)
    if abs(dec.residual) > tol:
        raise ArithmeticError(f"decomposition residual {dec.residual:.3e} exceeds {tol}")
    return dec


def _check_decodable(p: float) -> None:
    if not 0.0 <= p < 0.5:
        raise DomainError("minimum-distance decoding is ML only for crossover < 1/2")


def exact_error_probability(code: "Codebook", subcode_index: int, p: float, message: int = 0,
                            cap: int = EXACT_CAP) -> float:
    """Pr[decoded != message | message sent] for one subcodebook, by enumerating all outputs.

    The decoder picks the nearest codeword, ties to the smallest index.
    """
    _check_decodable(p)
    n = code.n
    check_cap(n, cap)
    words = code.packed()[subcode_index]
    if len(words) == 1:
        return 0.0
    y = np.arange(1 << n, dtype=np.uint64)
    d = np.bitwise_count(words[:, None] ^ y[None, :])
    decoded = np.argmin(d, axis=0)
    d_sent = d[message].astype(np.int64)
    if p == 0.0:
        lik = (d_sent == 0).astype(float)
    else:
        lik = np.exp(d_sent * math.log(p) + (n - d_sent) * math.log1p(-p))
    return math.fsum(lik[decoded != message])


def competitor_distance_pmf(n: int, wy: int, eps: float, upto: int) -> np.ndarray:
    """P[d(X, y) = j] for j = 0..upto, with X ~ Bernoulli(eps)^n and |y| = wy."""
    j = np.arange(upto + 1)
    ones = binom.pmf(j[: min(wy, upto) + 1], wy, 1.0 - eps)
    zeros = binom.pmf(j[: min(n - wy, upto) + 1], n - wy, eps)
    out = np.zeros(upto + 1)
    # both factors underflow to exact zeros away from their means; convolving
    # only the nonzero windows is exact and keeps large n tractable
    i1, i0 = np.flatnonzero(ones), np.flatnonzero(zeros)
    if len(i1) == 0 or len(i0) == 0:
        return out
    lo = i1[0] + i0[0]
    if lo > upto:
        return out
    conv = np.convolve(ones[i1[0]:i1[-1] + 1], zeros[i0[0]:i0[-1] + 1])
    hi = min(upto + 1, lo + len(conv))
    out[lo:hi] = conv[: hi - lo]
    return out


def error_given_statistics(n: int, m: int, eps: float, wy: int, d_sent: int, message: int = 0) -> float:
    """Probability that one of m-1 fresh i.i.d. codewords beats the sent one.

    Competitors with a smaller index win ties; the rest must be strictly closer.
    """
    pmf = competitor_distance_pmf(n, wy, eps, d_sent)
    below = min(math.fsum(pmf[:-1]), 1.0)
    at_or_below = min(below + pmf[-1], 1.0)
    lower, upper = message, m - 1 - message
    log_ok = 0.0
    for count, prob in ((lower, at_or_below), (upper, below)):
        if count == 0:
            continue
        if prob >= 1.0:
            return 1.0
        log_ok += float(count) * math.log1p(-prob)
    return -math.expm1(log_ok)


def exact_ensemble_error_probability(n: int, m: int, input: BernoulliDist, p: float,
                                     message: int = 0) -> float:
    """Random-coding average of Pr[decoded != message] over i.i.d. codebooks, exactly.

    Enumerates the noise weight and the received weight, the only statistics
    on which the competitors' chances depend.
    """
    _check_decodable(p)
    eps = input.p1
    total = []
    for d_sent in range(n + 1):
        p_noise = binom.pmf(d_sent, n, p)
        if p_noise == 0.0:
            continue
        # |y| = Bin(n - d, eps) + Bin(d, 1 - eps)
        wy_pmf = np.convolve(binom.pmf(np.arange(n - d_sent + 1), n - d_sent, eps),
                             binom.pmf(np.arange(d_sent + 1), d_sent, 1.0 - eps))
        for wy, pw in enumerate(wy_pmf):
            if pw == 0.0:
                continue
            total.append(p_noise * pw * error_given_statistics(n, m, eps, wy, d_sent, message))
    return math.fsum(total)


def finite_n_exponent(rho: float, profile: VpProfile, n: int, ch: BscChannel) -> float:
    """(n / n^alpha) E_0(rho, P_X,n): the quantity whose limit is the VP closed form."""
    input = vp_input_dist(profile, n)
    return float(n) ** (1.0 - profile.expo) * gallager_e0(rho, input, ch)


def sample_codeword_counts(n: int, mk: int, input: BernoulliDist, rng: np.random.Generator,
                           cap: int = EXACT_CAP) -> tuple[np.ndarray, np.ndarray]:
    """Multiplicities of each string in a codebook of ``mk`` i.i.d. words.

    Equal in law to drawing the words one by one and counting them.
    """
    check_cap(n, cap)
    px = exact_iid_dist(input, n, cap).probs
    counts = rng.multinomial(mk, px / px.sum())
    nz = np.nonzero(counts)[0]
    return nz.astype(np.uint64), counts[nz]


def _estimate(samples: list[float]) -> SampledEstimate:
    arr = np.asarray(samples)
    se = float(arr.std(ddof=1) / math.sqrt(len(arr))) if len(arr) > 1 else math.nan
    return SampledEstimate(math.fsum(arr) / len(arr), se, len(arr))


def sampled_codebook_divergences(n: int, mk: int, input: BernoulliDist, warren: BscChannel,
                                 obf_marginal: BernoulliDist, draws: int,
                                 rng: np.random.Generator) -> tuple[SampledEstimate, SampledEstimate]:
    """Estimates of E[D(P_Z^n|C || P_Zo^n)] and E[D(P_Z^n|C || P_Z^n)] over random codebooks.

    Each draw is evaluated exactly; only the codebook average is sampled.
    """
    totals, excess = [], []
    for _ in range(draws):
        values, counts = sample_codeword_counts(n, mk, input, rng)
        dec = decompose(mixture_output_dist(values, counts, n, warren), input, warren, obf_marginal)
        totals.append(dec.total)
        excess.append(dec.term_a)
    return _estimate(totals), _estimate(excess)


def codebook_mutual_information(n: int, mk: int, input: BernoulliDist, warren: BscChannel,
                                draws: int, rng: np.random.Generator) -> SampledEstimate:
    """I(C; Z^n) = H(P_Z^n) - E[H(P_Z^n|C)], with the conditional entropy sampled."""
    h_marginal = n * binary_entropy(output_marginal(input, warren).p1)
    samples = []
    for _ in range(draws):
        values, counts = sample_codeword_counts(n, mk, input, rng)
        samples.append(h_marginal - mixture_output_dist(values, counts, n, warren).entropy())
    return _estimate(samples)
