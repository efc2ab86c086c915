import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vpstealth.binary_channel import BernoulliDist, BscChannel, DomainError, VpProfile
from vpstealth.oracle import exact_ensemble_error_probability
from vpstealth.simulator import (
    TrialConfig,
    gallager_bound,
    generate_codebook,
    ml_decode,
    run_reliability_trials,
    stream,
    transmit,
    warren_statistics,
)
from vpstealth.stealth_region import StealthScenario


def scenario(a=1.0, alpha=0.5, p=0.1, q=0.1):
    return StealthScenario(VpProfile(a, alpha), BscChannel(p), BscChannel(q))


@given(st.integers(1, 12), st.integers(1, 6), st.integers(0, 2**32))
def test_ml_decode_picks_first_nearest(n, m, seed):
    rng = np.random.default_rng(seed)
    sub = rng.integers(0, 2, (m, n)).astype(np.uint8)
    y = rng.integers(0, 2, n).astype(np.uint8)
    d = [int(np.sum(w != y)) for w in sub]
    assert ml_decode(y, sub, 0.1) == d.index(min(d))


def test_ml_decode_rejects_useless_channel():
    with pytest.raises(DomainError):
        ml_decode(np.zeros(3), np.zeros((2, 3)), 0.5)


def test_streams_are_reproducible_and_distinct():
    a = stream(7, 3).random(4)
    assert np.array_equal(a, stream(7, 3).random(4))
    assert not np.array_equal(a, stream(7, 4).random(4))
    assert not np.array_equal(a, stream(7, 3, kind=1).random(4))


def test_transmit_flip_rate():
    y = transmit(np.zeros(200_000, dtype=np.uint8), BscChannel(0.1), stream(0, 0))
    assert abs(y.mean() - 0.1) < 0.003


@settings(max_examples=20, deadline=None)
@given(st.integers(4, 40), st.integers(2, 64), st.floats(0.05, 0.5), st.floats(0.01, 0.4))
def test_gallager_bound_dominates_ensemble_error(n, m, eps, p):
    src = BernoulliDist(eps)
    bound, rho = gallager_bound(n, m, src, BscChannel(p))
    assert 0.0 <= rho <= 1.0
    assert exact_ensemble_error_probability(n, m, src, p) <= bound * (1 + 1e-9)


@pytest.mark.parametrize("mode", ["explicit", "implicit"])
def test_samplers_agree_with_exact_ensemble(mode):
    sc = scenario(a=3.0, alpha=0.0, p=0.1)
    cfg = TrialConfig(sc, n=10, m=4, trials=4000, seed=3, mode=mode)
    rep = run_reliability_trials(cfg)
    exact = exact_ensemble_error_probability(10, 4, BernoulliDist(0.3), 0.1)
    assert rep.ci_low - 0.01 <= exact <= rep.ci_high + 0.01


def test_uniform_message_mode_matches_ensemble():
    sc = scenario(a=3.0, alpha=0.0, p=0.1)
    rep = run_reliability_trials(TrialConfig(sc, n=10, m=4, trials=4000, seed=5, uniform_message=True))
    exact = np.mean([exact_ensemble_error_probability(10, 4, BernoulliDist(0.3), 0.1, w) for w in range(4)])
    assert rep.ci_low - 0.01 <= exact <= rep.ci_high + 0.01


def test_reports_are_deterministic():
    cfg = TrialConfig(scenario(), n=64, m=8, k=2, trials=40, seed=11, trace=True)
    a, b = run_reliability_trials(cfg).to_dict(), run_reliability_trials(cfg).to_dict()
    assert a == b and len(a["trace"]) == 40


def test_fixed_codebook_mode():
    cfg = TrialConfig(scenario(), n=64, m=8, trials=20, fixed_codebook=True)
    assert run_reliability_trials(cfg).codebooks_sampled == 1
    with pytest.raises(DomainError):
        run_reliability_trials(TrialConfig(scenario(), n=64, m=8, trials=5, fixed_codebook=True, mode="implicit"))


def test_config_validation():
    with pytest.raises(DomainError):
        TrialConfig(scenario(), n=8, m=2, trials=0)
    with pytest.raises(DomainError):
        TrialConfig(scenario(), n=8, m=2, mode="fast")
    assert TrialConfig(scenario(), n=100, m=10**9).resolved_mode() == "implicit"


def test_codebook_shape():
    code = generate_codebook(6, 3, 2, BernoulliDist(0.5), stream(0, 0))
    assert code.words.shape == (2, 3, 6) and code.subcode(1).shape == (3, 6)


@pytest.mark.parametrize("n,m", [(8, 4), (400, 16), (400, 10**6)])
def test_warren_statistics_estimators(n, m):
    sc = StealthScenario(VpProfile(1.0, 0.5), BscChannel(0.1), BscChannel(0.1), obf=VpProfile(1.0, 0.5))
    rep = warren_statistics(TrialConfig(sc, n=n, m=m, trials=30, seed=1))
    assert np.isfinite(rep.divergence_estimate)
    assert rep.uncoded_term == 0.0
    assert rep.uncoded_term < warren_statistics(TrialConfig(scenario(), n=n, m=m, trials=2)).uncoded_term
    if n <= 20:
        assert rep.excess_divergence_estimate is not None
