"""P4 polyphase sequence and the cyclic-shifted phase mask on the
delay-Doppler plane.

The code length is tied to M (one chip per delay bin). Phases are
indexed from zero, phi_i = pi*i^2/P - pi*i, so phi_0 = 0 and the mask's
top-left entry is exp(j*0) = 1. Column k of the mask is column 0
cyclically shifted down by k mod M.
"""

from __future__ import annotations

import numpy as np

from .grid import DDFrame, GridError, GridParams


def p4_sequence(P: int) -> np.ndarray:
    """P4 phase sequence in radians: phi_i = pi*i^2/P - pi*i, i = 0..P-1."""
    if not (isinstance(P, (int, np.integer)) and P >= 1):
        raise GridError(f"P4 length must be a positive integer, got {P!r}")
    i = np.arange(P, dtype=float)
    return np.pi * i**2 / P - np.pi * i


def cyclic_phase_matrix(grid: GridParams) -> np.ndarray:
    """M x N unimodular mask, entry [l, k] = exp(j*phi_{(l-k) mod M})."""
    phi = p4_sequence(grid.M)
    l = np.arange(grid.M)[:, None]
    k = np.arange(grid.N)[None, :]
    return np.exp(1j * phi[(l - k) % grid.M])


def apply_code(dd: DDFrame) -> DDFrame:
    """Hadamard product with the cyclic-shifted P4 mask."""
    return DDFrame(grid=dd.grid, data=dd.data * cyclic_phase_matrix(dd.grid))


def remove_code(dd: DDFrame) -> DDFrame:
    """Hadamard product with the conjugate mask; exact inverse of apply_code."""
    return DDFrame(grid=dd.grid, data=dd.data * cyclic_phase_matrix(dd.grid).conj())
