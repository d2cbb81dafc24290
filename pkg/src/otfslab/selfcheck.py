"""Lightweight invariant suite behind the CLI selftest command.

Mirrors the core cross-route and unitarity checks from the test suite so
a deployed build can be sanity-checked without pytest installed.
"""

from __future__ import annotations

import numpy as np

from .ambiguity import ambiguity_surface, delay_cut, doppler_cut
from .channel import ChannelSpec, ChannelTap, apply_channel, channel_matrix
from .grid import DDFrame, TimeSignal, frame_energy, new_grid
from .modem import (
    Scheme,
    demodulate,
    modulate,
    otfs_modulate_direct,
    otfs_modulate_ofdm,
    pulse_shape,
    ticp4_modulate,
    tx_matrix,
)
from .transforms import interleave_rowcol, deinterleave_rowcol, isfft, sfft


def _random_frame(grid, rng):
    data = rng.standard_normal((grid.M, grid.N)) + 1j * rng.standard_normal((grid.M, grid.N))
    return DDFrame(grid=grid, data=data)


def run(seed: int = 0):
    """Execute all checks; returns (passed, failed, report lines)."""
    rng = np.random.default_rng(seed)
    checks = []

    def check(name, ok):
        checks.append((name, bool(ok)))

    for M, N in [(8, 4), (8, 8)]:
        grid = new_grid(M, N)
        Z = _random_frame(grid, rng)

        dev = np.max(np.abs(otfs_modulate_direct(Z).samples - otfs_modulate_ofdm(Z).samples))
        check(f"otfs path equivalence {M}x{N}", dev < 1e-10)

        dev = np.max(np.abs(ticp4_modulate(Z, "direct").samples
                            - ticp4_modulate(Z, "ofdm").samples))
        check(f"ticp4 path equivalence {M}x{N}", dev < 1e-10)

        for scheme in Scheme:
            A = tx_matrix(grid, scheme).data
            dev = np.max(np.abs(A @ Z.data.flatten(order="F") - modulate(Z, scheme).samples))
            check(f"{scheme.value} matrix route {M}x{N}", dev < 1e-10)
            dev = np.max(np.abs(A.conj().T @ A - np.eye(M * N)))
            check(f"{scheme.value} unitarity {M}x{N}", dev < 1e-10)
            back = demodulate(modulate(Z, scheme), grid, scheme)
            check(f"{scheme.value} round trip {M}x{N}",
                  np.max(np.abs(back.data - Z.data)) < 1e-10)

        check(f"isfft energy {M}x{N}",
              abs(frame_energy(isfft(Z)) - frame_energy(Z)) < 1e-10)
        check(f"sfft round trip {M}x{N}",
              np.max(np.abs(sfft(isfft(Z)).data - Z.data)) < 1e-10)

        s = modulate(Z, Scheme.OTFS)
        check(f"interleave round trip {M}x{N}",
              np.max(np.abs(deinterleave_rowcol(interleave_rowcol(s, grid), grid).samples
                            - s.samples)) < 1e-15)

    grid = new_grid(8, 4)
    probe = DDFrame(grid=grid, data=np.ones((8, 4)))
    shaped = pulse_shape(modulate(probe, Scheme.TICP4_OTFS), grid)
    surface = ambiguity_surface(shaped, max_lag=32, doppler_points=16)
    mag = np.abs(surface.values)
    check("surface peak at origin", abs(mag[32, 8] - mag.max()) < 1e-12)
    # (-d, -v) mirror; the -N/2 doppler edge has no positive partner
    check("surface symmetry",
          np.max(np.abs(mag[::-1, :0:-1] - mag[:, 1:])) < 1e-9)
    dual = doppler_cut(shaped, method="dual")
    spec = doppler_cut(shaped, method="spectral")
    check("doppler cut dual-form agreement",
          np.max(np.abs(dual.magnitude_db - spec.magnitude_db)) < 1e-9)
    check("delay cut peak 0 dB", delay_cut(shaped).magnitude_db.max() == 0.0)

    sig = TimeSignal(grid=grid, samples=rng.standard_normal(32) + 1j * rng.standard_normal(32))
    taps = tuple(ChannelTap(gain=complex(g), delay=l, doppler=k)
                 for g, l, k in zip(rng.standard_normal(4), [0, 1, 2, 3], [0, 1, 2, 3]))
    ch = ChannelSpec(taps=taps)
    H = channel_matrix(ch, 32)
    check("channel matrix/loop agreement",
          np.max(np.abs(H @ sig.samples - apply_channel(sig, ch).samples)) < 1e-12)

    lines = [f"{'PASS' if ok else 'FAIL'} {name}" for name, ok in checks]
    passed = sum(ok for _, ok in checks)
    return passed, len(checks) - passed, lines
