import math

import numpy as np
import pytest

from otfslab.channel import (
    FIXED_GAINS,
    UNIFORM_RANDOM,
    ChannelSpec,
    ChannelTap,
    add_awgn,
    apply_channel,
    channel_matrix,
    draw_channel,
    uniform_power_channel,
)
from otfslab.grid import CRITICAL, GridError, TimeSignal, new_grid


def signal(samples, grid=None):
    samples = np.asarray(samples, dtype=complex)
    if grid is None:
        grid = new_grid(samples.size, 1)
    return TimeSignal(grid=grid, samples=samples, origin=CRITICAL)


def single_tap(gain=1.0 + 0j, delay=0, doppler=0):
    return ChannelSpec(taps=(ChannelTap(gain=gain, delay=delay, doppler=doppler),))


def test_identity_channel():
    s = signal([1.0, 2.0, 3.0, 4.0])
    r = apply_channel(s, single_tap())
    assert np.array_equal(r.samples, s.samples)


def test_pure_delay_is_cyclic_shift():
    s = signal([1.0, 2.0, 3.0, 4.0])
    r = apply_channel(s, single_tap(delay=2))
    assert np.allclose(r.samples, [3.0, 4.0, 1.0, 2.0])


def test_pure_doppler_phase_ramp():
    s = signal([1.0, 1.0, 1.0, 1.0])
    r = apply_channel(s, single_tap(doppler=1))
    assert np.allclose(r.samples, [1.0, 1j, -1.0, -1j], atol=1e-12)


def test_phase_reference_conventions():
    s = signal([1.0, 0.0, 0.0, 0.0])
    delayed = ChannelSpec(taps=(ChannelTap(gain=1.0, delay=1, doppler=1),))
    absolute = ChannelSpec(taps=(ChannelTap(gain=1.0, delay=1, doppler=1),),
                           phase_reference="absolute")
    # the echo lands at q=1; delayed reference counts phase from q-delay=0
    assert np.allclose(apply_channel(s, delayed).samples, [0.0, 1.0, 0.0, 0.0], atol=1e-12)
    assert np.allclose(apply_channel(s, absolute).samples, [0.0, 1j, 0.0, 0.0], atol=1e-12)


def test_apply_channel_is_linear():
    rng = np.random.default_rng(0)
    g = new_grid(4, 2)
    ch = ChannelSpec(taps=(ChannelTap(0.5 + 0.2j, 1, 2), ChannelTap(-0.3j, 3, -1)))
    s1 = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    s2 = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    a, b = 1.7 - 0.4j, -0.6 + 2.1j
    lhs = apply_channel(signal(a * s1 + b * s2, g), ch).samples
    rhs = (a * apply_channel(signal(s1, g), ch).samples
           + b * apply_channel(signal(s2, g), ch).samples)
    assert np.max(np.abs(lhs - rhs)) < 1e-12


def test_apply_channel_rejects_out_of_range_delay():
    s = signal([1.0, 2.0])
    with pytest.raises(GridError):
        apply_channel(s, single_tap(delay=2))


def test_channel_spec_validation():
    with pytest.raises(GridError):
        ChannelSpec(taps=())
    with pytest.raises(GridError):
        ChannelSpec(taps=(ChannelTap(1.0, -1, 0),))
    with pytest.raises(GridError):
        ChannelSpec(taps=(ChannelTap(1.0, 0, 0),), power_profile="rayleigh")
    with pytest.raises(GridError):
        ChannelSpec(taps=(ChannelTap(1.0, 0, 0),), phase_reference="sideways")


def test_channel_matrix_identity_and_shift():
    assert np.array_equal(channel_matrix(single_tap(), 4), np.eye(4))
    H = channel_matrix(single_tap(delay=1), 4)
    assert np.array_equal(H, np.roll(np.eye(4), 1, axis=0))


def test_channel_matrix_matches_loop():
    rng = np.random.default_rng(1)
    g = new_grid(8, 4)
    taps = tuple(ChannelTap(gain=complex(rng.standard_normal(), rng.standard_normal()),
                            delay=int(d), doppler=int(k))
                 for d, k in zip([0, 1, 2, 3], [0, 1, 2, 3]))
    ch = ChannelSpec(taps=taps)
    H = channel_matrix(ch, 32)
    for _ in range(20):
        s = rng.standard_normal(32) + 1j * rng.standard_normal(32)
        assert np.max(np.abs(H @ s - apply_channel(signal(s, g), ch).samples)) < 1e-12


def test_awgn_noiseless_sentinel():
    s = signal(np.arange(1, 5, dtype=float))
    noisy, var = add_awgn(s, math.inf, rng_seed=0)
    assert var == 0.0
    assert np.array_equal(noisy.samples, s.samples)


def test_awgn_deterministic():
    s = signal(np.arange(1, 5, dtype=float))
    a, va = add_awgn(s, 10.0, rng_seed=42)
    b, vb = add_awgn(s, 10.0, rng_seed=42)
    assert va == vb
    assert np.array_equal(a.samples, b.samples)
    c, _ = add_awgn(s, 10.0, rng_seed=43)
    assert not np.array_equal(a.samples, c.samples)


def test_awgn_empirical_variance():
    g = new_grid(1000, 1000, oversampling=1)
    rng = np.random.default_rng(2)
    s = signal(rng.standard_normal(g.size) + 1j * rng.standard_normal(g.size), g)
    noisy, var = add_awgn(s, 0.0, rng_seed=7)
    es = np.mean(np.abs(s.samples) ** 2)
    assert var == pytest.approx(es)
    empirical = np.mean(np.abs(noisy.samples - s.samples) ** 2)
    assert empirical == pytest.approx(var, rel=0.01)


def test_uniform_power_channel_and_draw():
    profile = uniform_power_channel([0, 1, 2, 3], [0, 1, 2, 3])
    assert profile.power_profile == UNIFORM_RANDOM
    drawn = draw_channel(profile, rng_seed=5)
    assert drawn.power_profile == FIXED_GAINS
    assert [(t.delay, t.doppler) for t in drawn.taps] == [(0, 0), (1, 1), (2, 2), (3, 3)]
    again = draw_channel(profile, rng_seed=5)
    assert all(a.gain == b.gain for a, b in zip(drawn.taps, again.taps))


def test_draw_channel_requires_random_profile():
    with pytest.raises(GridError):
        draw_channel(single_tap(), rng_seed=0)


def test_draw_channel_unit_expected_power():
    profile = uniform_power_channel([0, 1, 2, 3], [0, 1, 2, 3])
    total = 0.0
    draws = 20000
    for seed in range(draws):
        total += sum(abs(t.gain) ** 2 for t in draw_channel(profile, seed).taps)
    assert total / draws == pytest.approx(1.0, rel=0.02)


def test_single_tap_power_is_exponential_mean_one():
    profile = uniform_power_channel([0], [0])
    power = np.array([abs(draw_channel(profile, seed).taps[0].gain) ** 2
                      for seed in range(20000)])
    assert power.mean() == pytest.approx(1.0, rel=0.05)
    assert np.median(power) == pytest.approx(np.log(2), rel=0.05)


def test_channel_spec_json_round_trip():
    ch = ChannelSpec(taps=(ChannelTap(0.5 - 0.25j, 1, 3), ChannelTap(1j, 2, -1)),
                     phase_reference="absolute")
    back = ChannelSpec.from_json(ch.to_json())
    assert back == ch
