"""Unitary building blocks: DFT matrices, ISFFT/SFFT, per-slot OFDM
(I)DFT, column-wise serialization and the row-column interleaver.

Sign convention: the forward DFT carries exp(-j2pi.), the inverse
exp(+j2pi.), so the Doppler-to-time map is literally an inverse DFT
over the Doppler index.
"""

from __future__ import annotations

import numpy as np

from .grid import (
    CRITICAL,
    DDFrame,
    DTFrame,
    GridError,
    GridParams,
    TFFrame,
    TimeSignal,
)


def dft_matrix(n: int) -> np.ndarray:
    """Normalized n-point DFT matrix, entry (a, b) = exp(-j2pi*a*b/n)/sqrt(n)."""
    if not (isinstance(n, (int, np.integer)) and n >= 1):
        raise GridError(f"DFT size must be a positive integer, got {n!r}")
    a = np.arange(n)
    return np.exp(-2j * np.pi * np.outer(a, a) / n) / np.sqrt(n)


def isfft(dd: DDFrame) -> TFFrame:
    """Delay-Doppler to time-frequency: X = F_M . Z . F_N^H."""
    M, N = dd.grid.M, dd.grid.N
    X = dft_matrix(M) @ dd.data @ dft_matrix(N).conj().T
    return TFFrame(grid=dd.grid, data=X)


def sfft(tf: TFFrame) -> DDFrame:
    """Time-frequency to delay-Doppler: Z = F_M^H . X . F_N (inverse of isfft)."""
    M, N = tf.grid.M, tf.grid.N
    Z = dft_matrix(M).conj().T @ tf.data @ dft_matrix(N)
    return DDFrame(grid=tf.grid, data=Z)


def ofdm_modulate_slots(tf: TFFrame) -> DTFrame:
    """Per-slot normalized inverse DFT over the frequency index: S = F_M^H . X."""
    S = dft_matrix(tf.grid.M).conj().T @ tf.data
    return DTFrame(grid=tf.grid, data=S)


def ofdm_demodulate_slots(dt: DTFrame) -> TFFrame:
    """Per-slot forward DFT, inverse of ofdm_modulate_slots."""
    X = dft_matrix(dt.grid.M) @ dt.data
    return TFFrame(grid=dt.grid, data=X)


def serialize_columnwise(dt: DTFrame) -> TimeSignal:
    """Column-wise P/S conversion: s[l + n*M] = S[l, n]."""
    return TimeSignal(grid=dt.grid, samples=dt.data.flatten(order="F"), origin=CRITICAL)


def deserialize_columnwise(s: TimeSignal, grid: GridParams) -> DTFrame:
    """Inverse of serialize_columnwise."""
    _require_critical(s, grid)
    return DTFrame(grid=grid, data=s.samples.reshape(grid.M, grid.N, order="F"))


def interleave_rowcol(s: TimeSignal, grid: GridParams) -> TimeSignal:
    """Row-column interleaver: out[l*N + n] = in[l + n*M]."""
    _require_critical(s, grid)
    block = s.samples.reshape(grid.M, grid.N, order="F")
    return TimeSignal(grid=grid, samples=block.flatten(order="C"), origin=CRITICAL)


def deinterleave_rowcol(s: TimeSignal, grid: GridParams) -> TimeSignal:
    """Inverse permutation of interleave_rowcol."""
    _require_critical(s, grid)
    block = s.samples.reshape(grid.M, grid.N, order="C")
    return TimeSignal(grid=grid, samples=block.flatten(order="F"), origin=CRITICAL)


def interleaver_matrix(grid: GridParams) -> np.ndarray:
    """Explicit MN x MN permutation matrix T with T @ s == interleave_rowcol(s).

    Built directly from the index map l + n*M -> l*N + n and validated
    as a permutation.
    """
    M, N = grid.M, grid.N
    T = np.zeros((M * N, M * N))
    l = np.repeat(np.arange(M), N)
    n = np.tile(np.arange(N), M)
    T[l * N + n, l + n * M] = 1.0
    assert np.array_equal(T.sum(axis=0), np.ones(M * N))
    assert np.array_equal(T.sum(axis=1), np.ones(M * N))
    return T


def _require_critical(s: TimeSignal, grid: GridParams) -> None:
    if s.origin != CRITICAL or s.samples.size != grid.size:
        raise GridError(
            f"expected a critical-rate signal of length {grid.size}, "
            f"got origin={s.origin!r} length={s.samples.size}"
        )
