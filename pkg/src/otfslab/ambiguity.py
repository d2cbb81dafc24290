"""Discretized ambiguity function: full delay-Doppler surface, the
zero-Doppler and zero-delay cuts, and mainlobe/sidelobe metrics.

Conventions (fixed for reproducibility):
  * aperiodic (zero-extended) lag correlation in delay,
  * Doppler exponent +j2pi*v*q/Q with v in bins of 1/(N*T) and
    Q the total sample count,
  * axes in normalized units: delay in T/M, Doppler in 1/(N*T),
  * dB values are amplitude dB (20*log10), peak-normalized, floored at
    -400 dB instead of -inf so downstream CSV/plots stay finite.

The zero-delay cut is the circular autocorrelation of the (zero-padded)
discrete spectrum, which at the sampled Doppler lags coincides exactly
with the dual form sum_q |s[q]|^2 e^{j2pi v q/Q}; both routes are
implemented and must agree.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .grid import OVERSAMPLED, GridError, TimeSignal

DB_FLOOR = -400.0


@dataclass(frozen=True)
class AmbiguitySurface:
    """Peak-normalized surface over (lag d, Doppler v).

    values[d_idx, v_idx] is complex with unit peak magnitude at the
    origin; `peak` keeps the pre-normalization origin value (the signal
    energy). delay_axis is in units of T/M, doppler_axis in 1/(N*T).
    """

    values: np.ndarray = field(repr=False)
    delay_axis: np.ndarray = field(repr=False)
    doppler_axis: np.ndarray = field(repr=False)
    peak: float


@dataclass(frozen=True)
class AmbiguityCut:
    """One-dimensional peak-normalized cut in amplitude dB."""

    axis: np.ndarray = field(repr=False)
    magnitude_db: np.ndarray = field(repr=False)


def _to_db(mag: np.ndarray) -> np.ndarray:
    peak = mag.max()
    if peak <= 0:
        raise GridError("cannot normalize an all-zero cut")
    floor = peak * 10.0 ** (DB_FLOOR / 20.0)
    return 20.0 * np.log10(np.maximum(mag, floor) / peak)


def _require_oversampled(s: TimeSignal) -> None:
    if s.origin != OVERSAMPLED:
        raise GridError("ambiguity analysis expects an oversampled signal")
    if s.samples.size == 0:
        raise GridError("empty signal")


def _lag_products(samples: np.ndarray, lags: np.ndarray) -> np.ndarray:
    """rows of p[d][q] = s[q] * conj(s[q+d]), zero-extended."""
    Q = samples.size
    out = np.zeros((lags.size, Q), dtype=np.complex128)
    for i, d in enumerate(lags):
        if d >= 0:
            out[i, : Q - d] = samples[: Q - d] * np.conj(samples[d:])
        else:
            out[i, -d:] = samples[-d:] * np.conj(samples[: Q + d])
    return out


def ambiguity_surface(
    s: TimeSignal, max_lag: int | None = None, doppler_points: int | None = None
) -> AmbiguitySurface:
    """chi[d, v] = sum_q s[q] conj(s[q+d]) e^{j2pi v q/Q}.

    Lags run over -max_lag..max_lag (default: full aperiodic support)
    and v over doppler_points values uniform in [-N/2, N/2) Doppler bins.
    """
    _require_oversampled(s)
    Q = s.samples.size
    N = s.grid.N
    os = s.grid.oversampling
    if max_lag is None:
        max_lag = Q - 1
    if not 0 <= max_lag < Q:
        raise GridError(f"max_lag must be in [0, {Q}), got {max_lag}")
    if doppler_points is None:
        doppler_points = 16 * N
    if doppler_points < 1:
        raise GridError("doppler_points must be >= 1")

    lags = np.arange(-max_lag, max_lag + 1)
    v = -N / 2 + np.arange(doppler_points) * (N / doppler_points)
    q = np.arange(Q)
    phases = np.exp(2j * np.pi * np.outer(q, v) / Q)  # Q x V
    values = _lag_products(s.samples, lags) @ phases

    d0 = max_lag
    v0 = int(np.argmin(np.abs(v)))
    peak = float(np.abs(values[d0, v0]))
    if peak <= 0:
        raise GridError("cannot normalize an all-zero surface")
    return AmbiguitySurface(
        values=values / peak,
        delay_axis=lags / os,
        doppler_axis=v,
        peak=peak,
    )


def delay_cut(s: TimeSignal) -> AmbiguityCut:
    """Zero-Doppler cut: aperiodic autocorrelation over lags -(Q-1)..Q-1."""
    _require_oversampled(s)
    Q = s.samples.size
    pos = np.array([np.sum(s.samples[: Q - d] * np.conj(s.samples[d:])) for d in range(Q)])
    full = np.concatenate([np.conj(pos[:0:-1]), pos])
    lags = np.arange(-(Q - 1), Q)
    return AmbiguityCut(axis=lags / s.grid.oversampling, magnitude_db=_to_db(np.abs(full)))


def doppler_cut(s: TimeSignal, points: int | None = None, method: str = "spectral") -> AmbiguityCut:
    """Zero-delay cut over [-N/2, N/2) Doppler bins.

    method='spectral': circular autocorrelation of the zero-padded
    discrete spectrum. method='dual': direct evaluation of
    sum_q |s[q]|^2 e^{j2pi v q/Q}. The two agree to machine precision at
    the sampled Doppler values.
    """
    _require_oversampled(s)
    Q = s.samples.size
    N = s.grid.N
    if points is None:
        points = 16 * N
    if points < 2 or points % 2:
        raise GridError("doppler_cut needs an even number of points >= 2")
    v = -N / 2 + np.arange(points) * (N / points)

    if method == "dual":
        q = np.arange(Q)
        chi = np.exp(2j * np.pi * np.outer(v, q) / Q) @ (np.abs(s.samples) ** 2)
    elif method == "spectral":
        # pad so the requested Doppler values fall on integer spectrum lags
        R = (Q // N) * points
        spectrum = np.fft.fft(s.samples, n=R) / np.sqrt(R)
        lags = np.rint(v * R / Q).astype(int)
        chi = np.array([np.sum(spectrum * np.conj(np.roll(spectrum, -u))) for u in lags])
    else:
        raise GridError(f"unknown doppler_cut method {method!r}")
    return AmbiguityCut(axis=v, magnitude_db=_to_db(np.abs(chi)))


def _origin_index(cut: AmbiguityCut) -> int:
    i = int(np.argmin(np.abs(cut.axis)))
    if cut.magnitude_db[i] != cut.magnitude_db.max():
        raise GridError("cut peak is not at the axis origin")
    return i


def mainlobe_width(cut: AmbiguityCut, threshold_db: float = -3.0) -> float:
    """Width (in axis units) of the contiguous region around the origin
    at or above threshold_db. Warns and returns the full span if the cut
    never drops below the threshold."""
    i0 = _origin_index(cut)
    db = cut.magnitude_db
    lo = i0
    while lo - 1 >= 0 and db[lo - 1] >= threshold_db:
        lo -= 1
    hi = i0
    while hi + 1 < db.size and db[hi + 1] >= threshold_db:
        hi += 1
    if lo == 0 and hi == db.size - 1 and db.min() >= threshold_db:
        warnings.warn("cut never drops below the threshold; returning full span")
    return float(cut.axis[hi] - cut.axis[lo])


def mainlobe_region(cut: AmbiguityCut) -> tuple[int, int]:
    """Index range [lo, hi] of the mainlobe: the strict descent around the
    origin, stopping before the first local minimum on each side (the
    minima themselves count as outside)."""
    i0 = _origin_index(cut)
    db = cut.magnitude_db
    lo = i0
    while lo - 1 >= 0 and db[lo - 1] < db[lo]:
        lo -= 1
    hi = i0
    while hi + 1 < db.size and db[hi + 1] < db[hi]:
        hi += 1
    return max(lo, min(lo + 1, i0)), min(hi, max(hi - 1, i0))


def peak_sidelobe_db(cut: AmbiguityCut) -> float:
    """Maximum level (dB) outside the first-minima mainlobe region.

    Raises if nothing lies outside the mainlobe, or if everything outside
    sits at the numerical floor (a delta-like cut has no sidelobes)."""
    lo, hi = mainlobe_region(cut)
    outside = np.concatenate([cut.magnitude_db[:lo], cut.magnitude_db[hi + 1:]])
    if outside.size == 0 or outside.max() <= DB_FLOOR + 1e-9:
        raise GridError("no sidelobes outside the mainlobe")
    return float(outside.max())


def cut_to_csv(cut: AmbiguityCut) -> str:
    lines = ["axis,mag_db"]
    lines += [f"{a:.17g},{m:.17g}" for a, m in zip(cut.axis, cut.magnitude_db)]
    return "\n".join(lines) + "\n"


def surface_to_csv(surface: AmbiguitySurface) -> str:
    lines = ["delay,doppler,mag_db"]
    mag_db = _to_db(np.abs(surface.values))
    for i, d in enumerate(surface.delay_axis):
        for j, v in enumerate(surface.doppler_axis):
            lines.append(f"{d:.17g},{v:.17g},{mag_db[i, j]:.17g}")
    return "\n".join(lines) + "\n"
