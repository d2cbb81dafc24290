"""Grid geometry and the frame/signal containers shared by every module.

Index conventions:
    DDFrame  data[l, k]  l = delay bin (0..M-1), k = Doppler bin (0..N-1)
    TFFrame  data[m, n]  m = subcarrier (0..M-1), n = time slot (0..N-1)
    DTFrame  data[l, n]  l = delay bin,           n = time slot
    TimeSignal samples[q], q = l + n*M at critical rate (column-wise P/S)

A "column" is a fixed Doppler index (DDFrame) or a fixed time slot
(TFFrame/DTFrame); column-wise serialization is numpy order='F'.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field

import numpy as np

CRITICAL = "baseband_critical"
OVERSAMPLED = "oversampled"


class GridError(ValueError):
    """Invalid grid geometry or frame contents."""


@dataclass(frozen=True)
class GridParams:
    """Delay-Doppler grid geometry.

    M delay bins / subcarriers, N Doppler bins / time slots, slot
    duration T seconds. Subcarrier spacing is 1/T, so the frame spans
    duration N*T and bandwidth M/T.
    """

    M: int
    N: int
    T: float = 1.0
    oversampling: int = 4

    def __post_init__(self):
        if not (isinstance(self.M, (int, np.integer)) and self.M >= 1):
            raise GridError(f"M must be a positive integer, got {self.M!r}")
        if not (isinstance(self.N, (int, np.integer)) and self.N >= 1):
            raise GridError(f"N must be a positive integer, got {self.N!r}")
        if not self.T > 0:
            raise GridError(f"T must be positive, got {self.T!r}")
        if not (isinstance(self.oversampling, (int, np.integer)) and self.oversampling >= 1):
            raise GridError(f"oversampling must be a positive integer, got {self.oversampling!r}")

    @property
    def delta_f(self) -> float:
        """Subcarrier spacing in Hz (1/T)."""
        return 1.0 / self.T

    @property
    def frame_duration(self) -> float:
        """Total frame duration N*T."""
        return self.N * self.T

    @property
    def bandwidth(self) -> float:
        """Occupied bandwidth M*delta_f."""
        return self.M / self.T

    @property
    def size(self) -> int:
        """Samples per frame at critical rate."""
        return self.M * self.N

    @property
    def critical_rate(self) -> float:
        """Critical (Nyquist) sample rate M/T."""
        return self.M / self.T


def new_grid(M: int, N: int, T: float = 1.0, oversampling: int = 4) -> GridParams:
    """Validated GridParams constructor."""
    return GridParams(M=M, N=N, T=T, oversampling=oversampling)


def _as_frame_data(grid: GridParams, data) -> np.ndarray:
    arr = np.asarray(data, dtype=np.complex128)
    if arr.shape != (grid.M, grid.N):
        raise GridError(f"frame must be {grid.M}x{grid.N}, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise GridError("frame entries must be finite")
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class DDFrame:
    """M x N symbols on the delay-Doppler plane, data[l, k]."""

    grid: GridParams
    data: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "data", _as_frame_data(self.grid, self.data))


@dataclass(frozen=True)
class TFFrame:
    """M x N symbols on the time-frequency plane, data[m, n]."""

    grid: GridParams
    data: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "data", _as_frame_data(self.grid, self.data))


@dataclass(frozen=True)
class DTFrame:
    """M x N symbols on the delay-time plane, data[l, n]."""

    grid: GridParams
    data: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "data", _as_frame_data(self.grid, self.data))


@dataclass(frozen=True)
class TimeSignal:
    """Complex baseband sample vector with rate and origin metadata.

    origin is CRITICAL (length M*N at rate M/T) or OVERSAMPLED (length
    oversampling*M*N at rate oversampling*M/T).
    """

    grid: GridParams
    samples: np.ndarray = field(repr=False)
    origin: str = CRITICAL

    def __post_init__(self):
        arr = np.asarray(self.samples, dtype=np.complex128)
        if arr.ndim != 1:
            raise GridError(f"samples must be 1-D, got shape {arr.shape}")
        expected = {
            CRITICAL: self.grid.size,
            OVERSAMPLED: self.grid.oversampling * self.grid.size,
        }
        if self.origin not in expected:
            raise GridError(f"unknown origin {self.origin!r}")
        if arr.size != expected[self.origin]:
            raise GridError(
                f"{self.origin} signal must have length {expected[self.origin]}, got {arr.size}"
            )
        if not np.all(np.isfinite(arr)):
            raise GridError("samples must be finite")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "samples", arr)

    @property
    def sample_rate(self) -> float:
        rate = self.grid.critical_rate
        if self.origin == OVERSAMPLED:
            rate *= self.grid.oversampling
        return rate


Frame = DDFrame | TFFrame | DTFrame


def frame_energy(frame: Frame | TimeSignal) -> float:
    """Sum of squared magnitudes over all entries."""
    values = frame.samples if isinstance(frame, TimeSignal) else frame.data
    return float(np.sum(np.abs(values) ** 2))


# -- CSV interchange ---------------------------------------------------------
#
# Frames: a "M,N" header line, a line with the dimensions, then M rows of
# N "re,im" pairs. Signals: "index,re,im" rows (see modem module docs).

def frame_to_csv(frame: Frame) -> str:
    buf = io.StringIO()
    buf.write("M,N\n")
    buf.write(f"{frame.grid.M},{frame.grid.N}\n")
    for row in frame.data:
        buf.write(",".join(f"{v.real:.17g},{v.imag:.17g}" for v in row))
        buf.write("\n")
    return buf.getvalue()


def frame_from_csv(text: str, grid: GridParams | None = None,
                   kind: type = DDFrame) -> Frame:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or lines[0].strip() != "M,N":
        raise GridError("frame CSV must start with an 'M,N' header line")
    M, N = (int(v) for v in lines[1].split(","))
    if grid is None:
        grid = GridParams(M=M, N=N)
    elif (grid.M, grid.N) != (M, N):
        raise GridError(f"CSV dimensions {M}x{N} do not match grid {grid.M}x{grid.N}")
    rows = []
    for ln in lines[2:2 + M]:
        vals = [float(v) for v in ln.split(",")]
        if len(vals) != 2 * N:
            raise GridError(f"expected {2*N} values per row, got {len(vals)}")
        rows.append([complex(vals[2 * j], vals[2 * j + 1]) for j in range(N)])
    if len(rows) != M:
        raise GridError(f"expected {M} data rows, got {len(rows)}")
    return kind(grid=grid, data=np.array(rows))


def signal_to_csv(signal: TimeSignal) -> str:
    buf = io.StringIO()
    buf.write("index,re,im\n")
    for q, v in enumerate(signal.samples):
        buf.write(f"{q},{v.real:.17g},{v.imag:.17g}\n")
    return buf.getvalue()


def signal_from_csv(text: str, grid: GridParams, origin: str = CRITICAL) -> TimeSignal:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or lines[0].strip() != "index,re,im":
        raise GridError("signal CSV must start with an 'index,re,im' header line")
    samples = []
    for ln in lines[1:]:
        _, re_s, im_s = ln.split(",")
        samples.append(complex(float(re_s), float(im_s)))
    return TimeSignal(grid=grid, samples=np.array(samples), origin=origin)
