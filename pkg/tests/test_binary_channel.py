import math

import mpmath as mpm
import pytest
from hypothesis import given
from hypothesis import strategies as st

from vpstealth.binary_channel import (
    BernoulliDist,
    BscChannel,
    DomainError,
    VpProfile,
    binary_entropy,
    chi2_distance,
    entropy_increment,
    kl_divergence,
    mutual_information_vp,
    output_marginal,
    variational_distance,
    vp_input_dist,
)

probs = st.floats(0.001, 0.999)
crossovers = st.floats(0.0, 0.5)


def mp_kl(x, y):
    x, y = mpm.mpf(x), mpm.mpf(y)
    total = mpm.mpf(0)
    for a, b in ((x, y), (1 - x, 1 - y)):
        if a > 0:
            total += a * mpm.log(a / b)
    return total


def mp_h2(x):
    x = mpm.mpf(x)
    return -x * mpm.log(x) - (1 - x) * mpm.log(1 - x)


# oracles


@pytest.mark.parametrize("x,y", [(0.3, 0.1), (0.5, 0.5), (0.1 + 1e-9, 0.1), (1e-8, 0.2), (0.0, 0.4)])
def test_kl_matches_extended_precision(x, y):
    got = kl_divergence(BernoulliDist(x), BernoulliDist(y))
    want = float(mp_kl(x, y))
    assert got == pytest.approx(want, rel=1e-12, abs=1e-300)


@pytest.mark.parametrize("p", [0.05, 0.1, 0.3])
@pytest.mark.parametrize("delta", [1e-2, 1e-6, 1e-8, 1e-12, -1e-8])
def test_entropy_increment_no_cancellation(p, delta):
    want = float(mp_h2(mpm.mpf(p) + mpm.mpf(delta)) - mp_h2(p))
    assert entropy_increment(p, delta) == pytest.approx(want, rel=1e-10)


def test_binary_entropy_values():
    assert binary_entropy(0.5) == pytest.approx(math.log(2))
    assert binary_entropy(0.0) == 0.0 and binary_entropy(1.0) == 0.0


def test_chi2_bsc_rows():
    q = 0.1
    ch = BscChannel(q)
    assert chi2_distance(ch.row(1), ch.row(0)) == pytest.approx((1 - 2 * q) ** 2 / (q * (1 - q)), rel=1e-14)


def test_mutual_information_taylor_slope():
    ch = BscChannel(0.1)
    mi = mutual_information_vp(VpProfile(1.0, 0.5), 10**12, ch)
    assert mi.exact / mi.taylor == pytest.approx(1.0, abs=1e-5)


# properties


@given(probs, probs)
def test_pinsker(x, y):
    P, Q = BernoulliDist(x), BernoulliDist(y)
    assert variational_distance(P, Q) ** 2 <= 0.5 * kl_divergence(P, Q) + 1e-15


@given(probs, probs)
def test_kl_nonnegative_and_zero_on_diagonal(x, y):
    assert kl_divergence(BernoulliDist(x), BernoulliDist(y)) >= 0.0
    assert kl_divergence(BernoulliDist(x), BernoulliDist(x)) == 0.0


@given(st.floats(0, 1), crossovers)
def test_bsc_contracts_toward_half(x, p):
    out = output_marginal(BernoulliDist(x), BscChannel(p))
    assert abs(out.p1 - 0.5) == pytest.approx((1 - 2 * p) * abs(x - 0.5), abs=1e-15)


@given(st.floats(0.01, 0.49), st.floats(1e-9, 1e-3))
def test_mutual_information_bounded_by_first_order(p, eps):
    # concavity of H2: the first-order term is an upper bound
    n = 10**6
    mi = mutual_information_vp(VpProfile(eps * n, 0.0), n, BscChannel(p))
    assert 0.0 <= mi.exact <= mi.taylor * (1 + 1e-12)


@given(st.floats(0.1, 10.0), st.floats(0.0, 1.0), st.integers(1, 10**9))
def test_profile_prob_is_energy_over_n(a, alpha, n):
    prof = VpProfile(a, alpha)
    assert prof.prob(n) == pytest.approx(prof.energy(n) / n, rel=1e-12)


# edges


def test_mutual_information_edges():
    prof = VpProfile(1.0, 0.5)
    assert mutual_information_vp(prof, 100, BscChannel(0.5)).taylor == 0.0
    assert mutual_information_vp(prof, 100, BscChannel(0.0)).taylor == math.inf


@pytest.mark.parametrize("bad", [-0.1, 1.1, math.nan])
def test_bernoulli_rejects(bad):
    with pytest.raises(DomainError):
        BernoulliDist(bad)


def test_domain_errors():
    with pytest.raises(DomainError):
        BscChannel(0.6)
    with pytest.raises(DomainError):
        VpProfile(0.0, 0.5)
    with pytest.raises(DomainError):
        vp_input_dist(VpProfile(20.0, 0.5), 100)
    with pytest.raises(DomainError):
        kl_divergence(BernoulliDist(0.5), BernoulliDist(0.0))
