"""Cyclic delay-Doppler multipath channel, AWGN, and the explicit
time-domain channel matrix used by the LMMSE receiver.

The channel is circular over the MN-sample frame (no cyclic prefix is
modeled anywhere):

    r[q] = sum_i h_i e^{j2pi k_i (q - l_i)/(MN)} s[(q - l_i) mod MN]

The Doppler phase is referenced to the delayed sample index (q - l_i)
by default; set phase_reference='absolute' for the e^{j2pi k_i q/(MN)}
convention.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace

import numpy as np

from .grid import CRITICAL, GridError, TimeSignal

FIXED_GAINS = "fixed_gains"
UNIFORM_RANDOM = "uniform_random"


@dataclass(frozen=True)
class ChannelTap:
    gain: complex
    delay: int
    doppler: int


@dataclass(frozen=True)
class ChannelSpec:
    """Multipath tap list.

    power_profile FIXED_GAINS uses the stored gains as-is;
    UNIFORM_RANDOM means gains are drawn per frame, i.i.d. complex
    Gaussian with variance 1/P (unit total expected power).
    """

    taps: tuple[ChannelTap, ...]
    power_profile: str = FIXED_GAINS
    phase_reference: str = "delayed"

    def __post_init__(self):
        if len(self.taps) < 1:
            raise GridError("channel needs at least one tap")
        if self.power_profile not in (FIXED_GAINS, UNIFORM_RANDOM):
            raise GridError(f"unknown power profile {self.power_profile!r}")
        if self.phase_reference not in ("delayed", "absolute"):
            raise GridError(f"unknown phase reference {self.phase_reference!r}")
        for tap in self.taps:
            if tap.delay < 0:
                raise GridError(f"negative delay tap {tap.delay}")

    def to_json(self) -> str:
        return json.dumps(
            {
                "taps": [
                    {
                        "gain_re": tap.gain.real,
                        "gain_im": tap.gain.imag,
                        "delay": tap.delay,
                        "doppler": tap.doppler,
                    }
                    for tap in self.taps
                ],
                "power_profile": self.power_profile,
                "phase_reference": self.phase_reference,
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "ChannelSpec":
        obj = json.loads(text)
        taps = tuple(
            ChannelTap(
                gain=complex(t.get("gain_re", 0.0), t.get("gain_im", 0.0)),
                delay=int(t["delay"]),
                doppler=int(t["doppler"]),
            )
            for t in obj["taps"]
        )
        return cls(
            taps=taps,
            power_profile=obj.get("power_profile", FIXED_GAINS),
            phase_reference=obj.get("phase_reference", "delayed"),
        )


def uniform_power_channel(delays, dopplers, phase_reference: str = "delayed") -> ChannelSpec:
    """UNIFORM_RANDOM profile over the given (delay, doppler) tap geometry."""
    if len(delays) != len(dopplers):
        raise GridError("delay and Doppler tap lists must have equal length")
    taps = tuple(ChannelTap(gain=0j, delay=int(l), doppler=int(k))
                 for l, k in zip(delays, dopplers))
    return ChannelSpec(taps=taps, power_profile=UNIFORM_RANDOM,
                       phase_reference=phase_reference)


def draw_channel(profile: ChannelSpec, rng_seed) -> ChannelSpec:
    """Realize a UNIFORM_RANDOM profile: gains ~ CN(0, 1/P), deterministic
    for a given seed."""
    if profile.power_profile != UNIFORM_RANDOM:
        raise GridError("draw_channel expects a uniform_random profile")
    rng = np.random.default_rng(rng_seed)
    P = len(profile.taps)
    gains = (rng.standard_normal(P) + 1j * rng.standard_normal(P)) * np.sqrt(1.0 / (2 * P))
    taps = tuple(replace(tap, gain=complex(g)) for tap, g in zip(profile.taps, gains))
    return ChannelSpec(taps=taps, power_profile=FIXED_GAINS,
                       phase_reference=profile.phase_reference)


def apply_channel(s: TimeSignal, ch: ChannelSpec) -> TimeSignal:
    """Circular multipath channel action at critical rate."""
    if s.origin != CRITICAL:
        raise GridError("apply_channel expects a critical-rate signal")
    L = s.samples.size
    q = np.arange(L)
    r = np.zeros(L, dtype=np.complex128)
    for tap in ch.taps:
        if tap.delay >= L:
            raise GridError(f"delay tap {tap.delay} exceeds signal length {L}")
        ref = (q - tap.delay) if ch.phase_reference == "delayed" else q
        r += tap.gain * np.exp(2j * np.pi * tap.doppler * ref / L) * np.roll(s.samples, tap.delay)
    return TimeSignal(grid=s.grid, samples=r, origin=CRITICAL)


def channel_matrix(ch: ChannelSpec, length: int) -> np.ndarray:
    """H with H @ s == apply_channel(s): a sum of gain x diagonal-phase x
    cyclic-shift terms."""
    q = np.arange(length)
    H = np.zeros((length, length), dtype=np.complex128)
    shift = np.eye(length)
    for tap in ch.taps:
        if tap.delay >= length:
            raise GridError(f"delay tap {tap.delay} exceeds signal length {length}")
        ref = (q - tap.delay) if ch.phase_reference == "delayed" else q
        phase = np.exp(2j * np.pi * tap.doppler * ref / length)
        H += tap.gain * (phase[:, None] * np.roll(shift, tap.delay, axis=0))
    return H


def add_awgn(s: TimeSignal, snr_db: float, rng_seed) -> tuple[TimeSignal, float]:
    """Complex AWGN at the given SNR; returns (noisy signal, noise variance).

    Per-sample noise variance is mean(|s|^2) / 10^(snr_db/10). snr_db of
    +inf is the noiseless sentinel. Deterministic for a given seed.
    """
    if s.samples.size == 0:
        raise GridError("empty signal")
    if math.isinf(snr_db) and snr_db > 0:
        return s, 0.0
    rng = np.random.default_rng(rng_seed)
    es = float(np.mean(np.abs(s.samples) ** 2))
    var = es / 10.0 ** (snr_db / 10.0)
    noise = (rng.standard_normal(s.samples.size) + 1j * rng.standard_normal(s.samples.size))
    noisy = s.samples + np.sqrt(var / 2.0) * noise
    return TimeSignal(grid=s.grid, samples=noisy, origin=s.origin), var
