import math

import numpy as np
import pytest

from idemldpc.channel import (
    ChannelConfig,
    bit_table,
    frame_rng,
    modulate,
    symbol_priors,
    to_bits,
    transmit,
)
from idemldpc.field import build_field
from idemldpc.ring import RingPoly

GF8 = build_field(3)


def test_sigma_convention():
    ch = ChannelConfig(3.0, 0.5)
    assert ch.sigma == pytest.approx(math.sqrt(1 / (2 * 0.5 * 10**0.3)))
    assert ChannelConfig(float("inf"), 0.5).sigma == 0.0
    with pytest.raises(ValueError):
        ChannelConfig(1.0, 0.0)


def test_bits_lsb_first():
    assert bit_table(GF8)[6].tolist() == [0, 1, 1]
    assert to_bits(np.array([1, 4]), GF8).tolist() == [1, 0, 0, 0, 0, 1]


def test_modulation():
    word = RingPoly(GF8.from_ints(np.array([0, 5, 7])), GF8)
    assert modulate(word).tolist() == [1, 1, 1, -1, 1, -1, -1, -1, -1]


def test_noise_variance_within_one_percent():
    ch = ChannelConfig(2.0, 15 / 21, seed=11)
    x = np.ones(1_000_000)
    noise = transmit(x, ch) - x
    assert abs(noise.var() / ch.sigma**2 - 1) < 0.01
    assert abs(noise.mean()) < 5 * ch.sigma / 1000


def test_seeding():
    ch = ChannelConfig(2.0, 0.5, seed=5, stream=1)
    x = np.ones(64)
    assert np.array_equal(transmit(x, ch, frame=3), transmit(x, ch, frame=3))
    assert not np.array_equal(transmit(x, ch, frame=3), transmit(x, ch, frame=4))
    other = ChannelConfig(2.0, 0.5, seed=5, stream=2)
    assert not np.array_equal(transmit(x, ch, frame=3), transmit(x, other, frame=3))
    assert frame_rng(1, 2, 3).integers(1 << 30) == frame_rng(1, 2, 3).integers(1 << 30)


def test_priors_normalised_and_peaked():
    rng = np.random.default_rng(0)
    y = rng.normal(size=30)
    p = symbol_priors(y, 0.8, GF8)
    assert p.shape == (10, 8)
    assert np.allclose(p.sum(axis=1), 1)
    # with no noise in the values, the hard decision carries the mass
    x = modulate(RingPoly(GF8.from_ints(np.array([3, 6, 0])), GF8))
    assert np.argmax(symbol_priors(x, 0.5, GF8), axis=1).tolist() == [3, 6, 0]


def test_priors_match_gaussian_likelihoods():
    y = np.array([0.3, -1.2, 0.7])
    sigma = 0.9
    p = symbol_priors(y, sigma, GF8)[0]
    signs = 1 - 2 * bit_table(GF8)
    lik = np.exp(-((y[None, :] - signs) ** 2).sum(axis=1) / (2 * sigma**2))
    assert np.allclose(p, lik / lik.sum())


def test_hard_priors():
    p = symbol_priors(np.array([1.0, -1.0, 1.0]), 0.0, GF8)
    assert p[0].tolist() == [0, 0, 1, 0, 0, 0, 0, 0]
    with pytest.raises(ValueError):
        symbol_priors(np.ones(4), 1.0, GF8)


def test_zero_observation_gives_uniform_priors():
    p = symbol_priors(np.zeros(9), 0.7, GF8)
    assert np.allclose(p, 1 / 8, atol=1e-12)


def test_gf4_unit_maps_low_bit_first():
    gf4 = build_field(2)
    assert modulate(RingPoly(gf4.from_ints(np.array([1])), gf4)).tolist() == [-1, 1]
