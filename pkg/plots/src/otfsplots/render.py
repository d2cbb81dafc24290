"""Figure builders for the four figure kinds.

Data is plotted exactly as read from the CSVs; the only cosmetic touch
is clipping dB *axis limits* at -60 dB for readability (noted on the
figure). Every builder returns, per series, the (min, max) of the values
it handed to matplotlib so callers can verify the no-reinterpretation
contract against the raw CSVs.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .readers import InputError, read_ber, read_cut, read_range_profile, read_surface

DB_AXIS_FLOOR = -60.0


def _extrema(values) -> tuple[float, float]:
    return (min(values), max(values))


def _clip_db_axis(ax) -> None:
    lo, hi = ax.get_ylim()
    if lo < DB_AXIS_FLOOR:
        ax.set_ylim(DB_AXIS_FLOOR, hi)


def cut_pair(inputs: list[Path], out: Path) -> dict[str, tuple[float, float]]:
    """Overlay cuts, two series per panel; 2 inputs -> one panel,
    4 inputs -> delay panel + Doppler panel."""
    if len(inputs) not in (2, 4):
        raise InputError("cut_pair needs 2 or 4 input CSVs (pairs per panel)")
    panels = [inputs[i:i + 2] for i in range(0, len(inputs), 2)]
    fig, axes = plt.subplots(1, len(panels), figsize=(6 * len(panels), 4), squeeze=False)
    extrema = {}
    for ax, panel in zip(axes[0], panels):
        for path in panel:
            series = read_cut(path)
            ax.plot(series.x, series.y, label=series.label)
            extrema[series.label] = _extrema(series.y)
        ax.set_xlabel("offset (normalized)")
        ax.set_ylabel("magnitude (dB)")
        ax.legend()
        ax.grid(True, alpha=0.3)
        _clip_db_axis(ax)
    fig.suptitle(f"ambiguity cuts (axis clipped at {DB_AXIS_FLOOR:g} dB)")
    fig.savefig(out, dpi=120)
    plt.close(fig)
    return extrema


def contour_pair(inputs: list[Path], out: Path) -> dict[str, tuple[float, float]]:
    """Side-by-side filled contours of two ambiguity surfaces."""
    if len(inputs) != 2:
        raise InputError("contour_pair needs exactly 2 surface CSVs")
    fig, axes = plt.subplots(1, 2, figsize=(12, 5))
    extrema = {}
    for ax, path in zip(axes, inputs):
        surface = read_surface(path)
        delays = sorted(set(surface.delay))
        dopplers = sorted(set(surface.doppler))
        grid = np.asarray(surface.mag_db).reshape(len(delays), len(dopplers))
        levels = np.linspace(max(DB_AXIS_FLOOR, min(surface.mag_db)), 0.0, 13)
        cs = ax.contourf(dopplers, delays, grid, levels=levels, extend="min")
        ax.set_xlabel("Doppler (bins)")
        ax.set_ylabel("delay (normalized)")
        ax.set_title(surface.label)
        fig.colorbar(cs, ax=ax, label="magnitude (dB)")
        extrema[surface.label] = _extrema(surface.mag_db)
    fig.suptitle(f"ambiguity surfaces (contour floor {DB_AXIS_FLOOR:g} dB)")
    fig.savefig(out, dpi=120)
    plt.close(fig)
    return extrema


def range_overlay(inputs: list[Path], out: Path) -> dict[str, tuple[float, float]]:
    """Overlaid range profiles on a linear magnitude axis."""
    if not inputs:
        raise InputError("range_overlay needs at least one profile CSV")
    fig, ax = plt.subplots(figsize=(7, 4))
    extrema = {}
    for path in inputs:
        series = read_range_profile(path)
        ax.plot(series.x, series.y, marker="o", markersize=3, label=series.label)
        extrema[series.label] = _extrema(series.y)
    ax.set_xlabel("lag (samples)")
    ax.set_ylabel("normalized magnitude")
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.suptitle("pulse-compression range profiles")
    fig.savefig(out, dpi=120)
    plt.close(fig)
    return extrema


def ber_curves(inputs: list[Path], out: Path) -> dict[str, tuple[float, float]]:
    """BER vs SNR on a log scale, one series per input CSV."""
    if not inputs:
        raise InputError("ber_curves needs at least one BER CSV")
    fig, ax = plt.subplots(figsize=(7, 4))
    extrema = {}
    for path in inputs:
        series = read_ber(path)
        ax.semilogy(series.x, series.y, marker="o", label=series.label)
        extrema[series.label] = _extrema(series.y)
    ax.set_xlabel("SNR (dB)")
    ax.set_ylabel("BER")
    ax.legend()
    ax.grid(True, which="both", alpha=0.3)
    fig.suptitle("LMMSE bit error rate")
    fig.savefig(out, dpi=120)
    plt.close(fig)
    return extrema


KINDS = {
    "cut_pair": cut_pair,
    "contour_pair": contour_pair,
    "range_overlay": range_overlay,
    "ber_curves": ber_curves,
}


def render(kind: str, inputs: list[Path], out: Path) -> dict[str, tuple[float, float]]:
    if kind not in KINDS:
        raise InputError(f"unknown figure kind {kind!r}")
    return KINDS[kind](inputs, out)
