import math

import numpy as np
import pytest

from otfslab.channel import (
    ChannelSpec,
    ChannelTap,
    channel_matrix,
    draw_channel,
    uniform_power_channel,
)
from otfslab.grid import CRITICAL, DDFrame, GridError, TimeSignal, new_grid
from otfslab.modem import Scheme, modulate, tx_matrix
from otfslab.receiver import (
    BerPoint,
    ber_experiment,
    ber_to_csv,
    lmmse_detect,
    qam4_demap,
    qam4_map,
)


def test_qam4_map_constellation():
    g = new_grid(1, 2)
    frame = qam4_map([0, 0, 1, 1], g)
    symbols = frame.data.flatten(order="F")
    assert symbols[0] == pytest.approx((1 + 1j) / np.sqrt(2))
    assert symbols[1] == pytest.approx((-1 - 1j) / np.sqrt(2))
    assert np.allclose(np.abs(symbols) ** 2, 1.0)


def test_qam4_map_fill_order_is_column_major():
    g = new_grid(2, 2)
    # make only the second symbol (l=1, k=0) differ
    frame = qam4_map([0, 0, 1, 1, 0, 0, 0, 0], g)
    assert frame.data[1, 0] == pytest.approx((-1 - 1j) / np.sqrt(2))
    assert frame.data[0, 1] == pytest.approx((1 + 1j) / np.sqrt(2))


def test_qam4_map_validation():
    g = new_grid(2, 2)
    with pytest.raises(GridError):
        qam4_map([0, 1, 0], g)
    with pytest.raises(GridError):
        qam4_map([0, 1] * 3 + [2, 0], g)


def test_qam4_demap_sign_decisions():
    g = new_grid(1, 1)
    assert list(qam4_demap(DDFrame(grid=g, data=[[0.9 + 0.1j]]))) == [0, 0]
    assert list(qam4_demap(DDFrame(grid=g, data=[[-0.1 - 0.9j]]))) == [1, 1]


def test_qam4_round_trip():
    g = new_grid(8, 4)
    rng = np.random.default_rng(0)
    bits = rng.integers(0, 2, size=64)
    assert np.array_equal(qam4_demap(qam4_map(bits, g)), bits)


@pytest.mark.parametrize("scheme", list(Scheme))
def test_lmmse_identity_channel_noiseless_is_exact(scheme):
    g = new_grid(8, 4)
    rng = np.random.default_rng(1)
    bits = rng.integers(0, 2, size=64)
    dd = qam4_map(bits, g)
    r = modulate(dd, scheme)
    H = np.eye(32)
    z = lmmse_detect(r, H, tx_matrix(g, scheme), noise_var=0.0)
    assert np.max(np.abs(z.data - dd.data)) < 1e-8


def test_lmmse_multipath_noiseless_recovery():
    g = new_grid(8, 4)
    profile = uniform_power_channel([0, 1, 2, 3], [0, 1, 2, 3])
    ch = draw_channel(profile, rng_seed=3)
    H = channel_matrix(ch, 32)
    rng = np.random.default_rng(2)
    bits = rng.integers(0, 2, size=64)
    dd = qam4_map(bits, g)
    r = TimeSignal(grid=g, samples=H @ modulate(dd, Scheme.TICP4_OTFS).samples,
                   origin=CRITICAL)
    z = lmmse_detect(r, H, tx_matrix(g, Scheme.TICP4_OTFS), noise_var=0.0)
    assert np.max(np.abs(z.data - dd.data)) < 1e-6


def test_lmmse_rejects_negative_noise_var():
    g = new_grid(2, 2)
    r = TimeSignal(grid=g, samples=np.zeros(4), origin=CRITICAL)
    with pytest.raises(GridError):
        lmmse_detect(r, np.eye(4), tx_matrix(g, Scheme.OTFS), noise_var=-1.0)


def test_ber_point_ratio():
    p = BerPoint(snr_db=4.0, bit_errors=5, bits_total=100)
    assert p.ber == 0.05


def test_ber_noiseless_identity_channel_is_error_free():
    g = new_grid(8, 4)
    profile = uniform_power_channel([0], [0])
    for scheme in Scheme:
        points = ber_experiment(g, scheme, [math.inf], frames=20,
                                channel_profile=profile, seed=0)
        assert points[0].bit_errors == 0


def test_ber_deterministic_for_fixed_seed():
    g = new_grid(8, 4)
    profile = uniform_power_channel([0, 1, 2, 3], [0, 1, 2, 3])
    a = ber_experiment(g, Scheme.OTFS, [0.0, 6.0], frames=50, channel_profile=profile, seed=9)
    b = ber_experiment(g, Scheme.OTFS, [0.0, 6.0], frames=50, channel_profile=profile, seed=9)
    assert a == b
    c = ber_experiment(g, Scheme.OTFS, [0.0, 6.0], frames=50, channel_profile=profile, seed=10)
    assert a != c


def test_ber_approaches_coin_flip_at_very_low_snr():
    g = new_grid(8, 4)
    profile = uniform_power_channel([0, 1, 2, 3], [0, 1, 2, 3])
    frames = 1600  # > 1e5 bits
    deep = ber_experiment(g, Scheme.OTFS, [-30.0], frames=frames,
                          channel_profile=profile, seed=1)[0]
    assert deep.bits_total >= 100000
    assert deep.ber == pytest.approx(0.5, abs=0.05)
    low = ber_experiment(g, Scheme.OTFS, [-10.0], frames=frames,
                         channel_profile=profile, seed=1)[0]
    assert 0.3 < low.ber < 0.5


def test_ber_identity_channel_schemes_statistically_close():
    # with a unitary modulation matrix the identity-channel link differs
    # only by an isotropic rotation of the noise, so long-run BERs match
    g = new_grid(8, 4)
    profile = uniform_power_channel([0], [0])
    frames = 2000
    otfs = ber_experiment(g, Scheme.OTFS, [6.0], frames=frames,
                          channel_profile=profile, seed=4)[0]
    ticp4 = ber_experiment(g, Scheme.TICP4_OTFS, [6.0], frames=frames,
                           channel_profile=profile, seed=4)[0]
    se = np.sqrt(otfs.ber * (1 - otfs.ber) / otfs.bits_total)
    assert abs(otfs.ber - ticp4.ber) < 4 * se + 1e-12


def test_ber_to_csv_format():
    points = [BerPoint(snr_db=0.0, bit_errors=10, bits_total=100)]
    text = ber_to_csv(Scheme.TICP4_OTFS, points)
    lines = text.splitlines()
    assert lines[0] == "scheme,snr_db,bits,errors,ber"
    name, snr, bits, errors, ber = lines[1].split(",")
    assert name == "ticp4"
    assert float(snr) == 0.0
    assert (int(bits), int(errors)) == (100, 10)
    assert float(ber) == pytest.approx(0.1)
