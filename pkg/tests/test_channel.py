import math

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from polarsim import (
    LLR_MAX,
    ChannelParams,
    awgn,
    channel_llr,
    ebno_to_sigma,
    frame_rng,
    modulate_bpsk,
)


def test_sigma_closed_forms():
    # R = 1/2: sigma = 10^(-ebno_db/20) exactly.
    assert ebno_to_sigma(0.0, 0.5) == pytest.approx(1.0)
    assert ebno_to_sigma(2.0, 0.5) == pytest.approx(10 ** (-0.1))
    assert ebno_to_sigma(6.0, 0.5) == pytest.approx(10 ** (-0.3))
    # uncoded at 0 dB: sigma^2 = 1/2
    assert ebno_to_sigma(0.0, 1.0) == pytest.approx(math.sqrt(0.5))


def test_sigma_decreases_with_snr_and_rate():
    assert ebno_to_sigma(3.0, 0.5) < ebno_to_sigma(1.0, 0.5)
    assert ebno_to_sigma(1.0, 0.9) < ebno_to_sigma(1.0, 0.1)
    with pytest.raises(ValueError):
        ebno_to_sigma(1.0, 0.0)
    with pytest.raises(ValueError):
        ebno_to_sigma(1.0, 1.5)


def test_channel_params_sigma():
    p = ChannelParams(ebno_db=0.0, rate_for_sigma=0.5)
    assert p.sigma == pytest.approx(1.0)


def test_bpsk_mapping():
    out = modulate_bpsk(np.array([0, 1, 1, 0], dtype=np.uint8))
    assert_array_equal(out, [1.0, -1.0, -1.0, 1.0])
    assert out.dtype == np.float64


def test_awgn_moments():
    rng = np.random.default_rng(0)
    x = np.ones(200_000)
    y = awgn(x, 0.8, rng)
    noise = y - x
    assert abs(noise.mean()) < 0.01
    assert abs(noise.std() - 0.8) < 0.01


def test_awgn_noiseless_and_validation():
    rng = np.random.default_rng(1)
    x = modulate_bpsk(np.array([0, 1]))
    assert_array_equal(awgn(x, 0.0, rng), x)
    with pytest.raises(ValueError):
        awgn(x, -1.0, rng)


def test_llr_scaling():
    y = np.array([0.5, -2.0, 0.0])
    assert_allclose(channel_llr(y, 1.0), [1.0, -4.0, 0.0])
    assert_allclose(channel_llr(y, 0.5), [4.0, -16.0, 0.0])


def test_llr_sign_convention():
    # positive received symbol (bit 0 sent) must give a positive LLR
    sent = modulate_bpsk(np.array([0, 1]))
    llr = channel_llr(sent, 0.7)
    assert llr[0] > 0 > llr[1]


def test_llr_noiseless_saturates():
    y = modulate_bpsk(np.array([0, 1, 0]))
    llr = channel_llr(y, 0.0)
    assert_array_equal(llr, [LLR_MAX, -LLR_MAX, LLR_MAX])
    assert np.isfinite(llr).all()


def test_uncoded_ber_matches_q_function():
    # BPSK at 4 dB: BER = Q(sqrt(2 Eb/N0)) = erfc(sqrt(Eb/N0))/2.
    ebno_db = 4.0
    sigma = ebno_to_sigma(ebno_db, 1.0)
    expect = 0.5 * math.erfc(math.sqrt(10 ** (ebno_db / 10)))
    rng = np.random.default_rng(1234)
    bits = rng.integers(0, 2, 400_000)
    llr = channel_llr(awgn(modulate_bpsk(bits), sigma, rng), sigma)
    ber = np.mean((llr < 0) != bits)
    # ~1.25e-2 expected; allow a generous Monte Carlo margin
    assert ber == pytest.approx(expect, rel=0.08)


def test_frame_rng_reproducible_and_independent():
    a = frame_rng(123, 0, 5).standard_normal(8)
    b = frame_rng(123, 0, 5).standard_normal(8)
    assert_array_equal(a, b)
    c = frame_rng(123, 0, 6).standard_normal(8)
    d = frame_rng(123, 1, 5).standard_normal(8)
    e = frame_rng(124, 0, 5).standard_normal(8)
    assert not np.array_equal(a, c)
    assert not np.array_equal(a, d)
    assert not np.array_equal(a, e)
