import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vpstealth.binary_channel import BernoulliDist, BscChannel, kl_divergence
from vpstealth.oracle import (
    ExactCapError,
    ExactDist,
    check_cap,
    decomposition_check,
    exact_divergence,
    exact_ensemble_error_probability,
    exact_error_probability,
    exact_iid_dist,
    exact_output_dist,
    pack,
    sample_codeword_counts,
)
from vpstealth.simulator import Codebook, generate_codebook, stream


def naive_output(words, q):
    """Output law of a uniform codeword, summing over tuples symbol by symbol."""
    n = words.shape[1]
    out = np.zeros(1 << n)
    for z in itertools.product((0, 1), repeat=n):
        idx = sum(b << i for i, b in enumerate(z))
        for w in words:
            out[idx] += math.prod(q if a != b else 1 - q for a, b in zip(w, z)) / len(words)
    return out


def naive_error(words, p, message):
    n = words.shape[1]
    err = 0.0
    for y in itertools.product((0, 1), repeat=n):
        d = [sum(a != b for a, b in zip(w, y)) for w in words]
        if min(range(len(d)), key=lambda i: (d[i], i)) != message:
            err += p ** d[message] * (1 - p) ** (n - d[message])
    return err


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 6), st.integers(1, 5), st.floats(0.0, 0.5), st.integers(0, 2**32))
def test_output_dist_matches_naive(n, m, q, seed):
    code = generate_codebook(n, m, 1, BernoulliDist(0.4), np.random.default_rng(seed))
    got = exact_output_dist(code, BscChannel(q)).probs
    np.testing.assert_allclose(got, naive_output(code.words[0], q), rtol=1e-12, atol=1e-300)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 6), st.integers(2, 5), st.floats(0.0, 0.49), st.integers(0, 2**32))
def test_error_probability_matches_naive(n, m, p, seed):
    rng = np.random.default_rng(seed)
    code = generate_codebook(n, m, 1, BernoulliDist(0.5), rng)
    msg = int(rng.integers(m))
    assert exact_error_probability(code, 0, p, msg) == pytest.approx(naive_error(code.words[0], p, msg), abs=1e-14)


@pytest.mark.parametrize("message", [0, 1, 2])
def test_ensemble_error_equals_average_over_all_codebooks(message):
    # n = 3, m = 3: every one of the 2^9 codebooks, weighted by its probability
    n, m, eps, p = 3, 3, 0.3, 0.15
    total = 0.0
    for bits in itertools.product((0, 1), repeat=n * m):
        words = np.array(bits, dtype=np.uint8).reshape(1, m, n)
        weight = eps ** sum(bits) * (1 - eps) ** (n * m - sum(bits))
        total += weight * exact_error_probability(Codebook(words, BernoulliDist(eps)), 0, p, message)
    got = exact_ensemble_error_probability(n, m, BernoulliDist(eps), p, message)
    assert got == pytest.approx(total, rel=1e-12)


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 10), st.integers(1, 4), st.integers(1, 4), st.sampled_from([0.1, 0.3]),
       st.floats(0.0, 0.3), st.integers(0, 2**32))
def test_decomposition_adds_up(n, m, k, q, obf, seed):
    code = generate_codebook(n, m, k, BernoulliDist(0.2), np.random.default_rng(seed))
    dec = decomposition_check(code, BscChannel(q), BernoulliDist(obf))
    assert abs(dec.residual) <= 1e-12
    assert dec.term_a >= -1e-12


@given(st.floats(0.01, 0.99), st.floats(0.01, 0.99), st.integers(1, 10))
def test_tensorization(x, y, n):
    d = exact_divergence(exact_iid_dist(BernoulliDist(x), n), exact_iid_dist(BernoulliDist(y), n))
    assert d == pytest.approx(n * kl_divergence(BernoulliDist(x), BernoulliDist(y)), rel=1e-10, abs=1e-13)


def test_pack_bit_order():
    assert pack(np.array([[1, 0, 0], [0, 0, 1], [1, 1, 1]])).tolist() == [1, 4, 7]


def test_codeword_counts_sum():
    values, counts = sample_codeword_counts(8, 1000, BernoulliDist(0.2), stream(0, 0))
    assert counts.sum() == 1000 and np.all(np.diff(values.astype(np.int64)) > 0)


def test_single_codeword_never_errs():
    code = generate_codebook(5, 1, 1, BernoulliDist(0.5), stream(0, 0))
    assert exact_error_probability(code, 0, 0.2) == 0.0


def test_cap_and_validation():
    with pytest.raises(ExactCapError, match="n <= 20"):
        check_cap(21)
    with pytest.raises(ValueError):
        ExactDist(2, np.array([0.5, 0.5, 0.1, 0.0]))
    with pytest.raises(ValueError):
        ExactDist(1, np.array([0.5, 0.5, 0.0]))


@given(st.integers(1, 300), st.floats(1e-6, 0.5), st.data())
def test_competitor_pmf_matches_full_convolution(n, eps, data):
    from scipy.stats import binom

    from vpstealth.oracle import competitor_distance_pmf

    wy = data.draw(st.integers(0, n))
    upto = data.draw(st.integers(0, n))
    j = np.arange(n + 1)
    full = np.convolve(binom.pmf(j[: wy + 1], wy, 1 - eps), binom.pmf(j[: n - wy + 1], n - wy, eps))
    np.testing.assert_allclose(competitor_distance_pmf(n, wy, eps, upto), full[: upto + 1], rtol=1e-12, atol=1e-300)
