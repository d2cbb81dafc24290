"""4-QAM mapping, LMMSE detection through the composite
channel-plus-modulation matrix, and the Monte-Carlo BER harness.

The detector is the exact linear MMSE estimate through G = H @ A:

    z_hat = (G^H G + sigma^2 I)^{-1} G^H r

with the channel genie-known. Per-frame randomness (bits, tap gains,
noise) is seeded from (base seed, SNR index, frame index) so results
are deterministic and identical across schemes sharing a seed,
regardless of batching or scheduling.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .channel import UNIFORM_RANDOM, ChannelSpec, channel_matrix
from .grid import CRITICAL, DDFrame, GridError, GridParams, TimeSignal
from .modem import Scheme, TxMatrix, tx_matrix


@dataclass(frozen=True)
class BerPoint:
    snr_db: float
    bit_errors: int
    bits_total: int

    @property
    def ber(self) -> float:
        return self.bit_errors / self.bits_total


def qam4_map(bits, grid: GridParams) -> DDFrame:
    """Gray-coded unit-energy 4-QAM, bit pairs (b0, b1) ->
    ((1-2*b0) + j(1-2*b1))/sqrt(2), filled column-major."""
    bits = np.asarray(bits, dtype=int)
    if bits.ndim != 1 or bits.size != 2 * grid.size:
        raise GridError(f"expected {2 * grid.size} bits, got {bits.size}")
    if not np.all((bits == 0) | (bits == 1)):
        raise GridError("bits must be 0 or 1")
    symbols = ((1 - 2 * bits[0::2]) + 1j * (1 - 2 * bits[1::2])) / np.sqrt(2)
    return DDFrame(grid=grid, data=symbols.reshape(grid.M, grid.N, order="F"))


def qam4_demap(frame: DDFrame) -> np.ndarray:
    """Hard sign decisions inverting qam4_map."""
    symbols = frame.data.flatten(order="F")
    bits = np.empty(2 * symbols.size, dtype=int)
    bits[0::2] = symbols.real < 0
    bits[1::2] = symbols.imag < 0
    return bits


def lmmse_detect(r: TimeSignal, H: np.ndarray, A: TxMatrix, noise_var: float) -> DDFrame:
    """LMMSE symbol estimates in the delay-Doppler domain."""
    if noise_var < 0:
        raise GridError("noise variance must be nonnegative")
    grid = A.grid
    if r.origin != CRITICAL or r.samples.size != grid.size:
        raise GridError("received signal must be critical rate of length MN")
    G = H @ A.data
    lhs = G.conj().T @ G + noise_var * np.eye(grid.size)
    z = np.linalg.solve(lhs, G.conj().T @ r.samples)
    return DDFrame(grid=grid, data=z.reshape(grid.M, grid.N, order="F"))


def _tap_basis(profile: ChannelSpec, length: int) -> np.ndarray:
    """Per-tap unit-gain channel matrices; a realization is their
    gain-weighted sum."""
    mats = []
    for tap in profile.taps:
        unit = ChannelSpec(taps=(tap.__class__(gain=1.0 + 0j, delay=tap.delay,
                                               doppler=tap.doppler),),
                           phase_reference=profile.phase_reference)
        mats.append(channel_matrix(unit, length))
    return np.array(mats)


def ber_experiment(
    grid: GridParams,
    scheme: Scheme,
    snr_grid,
    frames: int,
    channel_profile: ChannelSpec,
    seed: int,
) -> list[BerPoint]:
    """Monte-Carlo BER sweep: per frame draw bits and channel gains,
    modulate, pass through channel plus AWGN, LMMSE detect, demap."""
    if frames < 1:
        raise GridError("frames must be >= 1")
    if channel_profile.power_profile != UNIFORM_RANDOM:
        raise GridError("ber_experiment expects a uniform_random channel profile")
    L = grid.size
    P = len(channel_profile.taps)
    A = tx_matrix(grid, scheme).data
    basis = _tap_basis(channel_profile, L)
    eye = np.eye(L)

    results = []
    for si, snr_db in enumerate(snr_grid):
        bits = np.empty((frames, 2 * L), dtype=int)
        gains = np.empty((frames, P), dtype=np.complex128)
        noise = np.empty((frames, L), dtype=np.complex128)
        for t in range(frames):
            rng = np.random.default_rng(np.random.SeedSequence([int(seed), si, t]))
            bits[t] = rng.integers(0, 2, size=2 * L)
            gains[t] = (rng.standard_normal(P) + 1j * rng.standard_normal(P)) * np.sqrt(1 / (2 * P))
            noise[t] = (rng.standard_normal(L) + 1j * rng.standard_normal(L)) / np.sqrt(2)

        symbols = ((1 - 2 * bits[:, 0::2]) + 1j * (1 - 2 * bits[:, 1::2])) / np.sqrt(2)
        s = symbols @ A.T  # unit-energy symbols: mean per-sample power is 1
        noise_var = 10.0 ** (-snr_db / 10.0)
        H = np.einsum("tp,pab->tab", gains, basis)
        r = np.einsum("tab,tb->ta", H, s) + np.sqrt(noise_var) * noise

        G = H @ A
        Gh = G.conj().transpose(0, 2, 1)
        lhs = Gh @ G + noise_var * eye[None, :, :]
        rhs = np.einsum("tab,tb->ta", Gh, r)
        errors = 0
        total = frames * 2 * L
        try:
            z = np.linalg.solve(lhs, rhs[:, :, None])[:, :, 0]
        except np.linalg.LinAlgError:
            # fall back to per-frame solves, discarding singular trials
            z = np.full((frames, L), np.nan, dtype=np.complex128)
            discarded = 0
            for t in range(frames):
                try:
                    z[t] = np.linalg.solve(lhs[t], rhs[t])
                except np.linalg.LinAlgError:
                    discarded += 1
            if discarded:
                warnings.warn(f"discarded {discarded} singular trials at {snr_db} dB")
                total -= discarded * 2 * L
        ok = ~np.isnan(z[:, 0])
        hard = np.empty_like(bits)
        hard[:, 0::2] = z.real < 0
        hard[:, 1::2] = z.imag < 0
        errors = int((hard[ok] != bits[ok]).sum())
        results.append(BerPoint(snr_db=float(snr_db), bit_errors=errors, bits_total=total))
    return results


def ber_to_csv(scheme: Scheme, points: list[BerPoint]) -> str:
    lines = ["scheme,snr_db,bits,errors,ber"]
    lines += [
        f"{scheme.value},{p.snr_db:.17g},{p.bits_total},{p.bit_errors},{p.ber:.17g}"
        for p in points
    ]
    return "\n".join(lines) + "\n"
