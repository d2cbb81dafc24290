"""Parsers for the otfslab CSV output files.

All files may start with '#' comment lines (provenance headers); the
first non-comment line is the column header. Data is returned exactly as
stored — no smoothing, clipping, or renormalization happens here.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path


class InputError(ValueError):
    """Missing or malformed input CSV."""


@dataclass(frozen=True)
class Series:
    label: str
    x: list[float]
    y: list[float]


@dataclass(frozen=True)
class Surface:
    label: str
    delay: list[float]
    doppler: list[float]
    mag_db: list[float]


def _rows(path: Path, expected_header: str) -> list[list[str]]:
    try:
        lines = [ln for ln in path.read_text().splitlines()
                 if ln.strip() and not ln.startswith("#")]
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    if not lines or lines[0] != expected_header:
        raise InputError(f"{path}: expected header {expected_header!r}")
    rows = list(csv.reader(lines[1:]))
    width = len(expected_header.split(","))
    numeric_from = 1 if expected_header.startswith("scheme") else 0
    for row in rows:
        if len(row) != width:
            raise InputError(f"{path}: expected {width} columns, got {row}")
        for value in row[numeric_from:]:
            try:
                float(value)
            except ValueError as exc:
                raise InputError(f"{path}: non-numeric value {value!r}") from exc
    if not rows:
        raise InputError(f"{path}: no data rows")
    return rows


def _label(path: Path) -> str:
    return path.stem


def read_cut(path: Path) -> Series:
    rows = _rows(path, "axis,mag_db")
    return Series(label=_label(path),
                  x=[float(r[0]) for r in rows],
                  y=[float(r[1]) for r in rows])


def read_range_profile(path: Path) -> Series:
    rows = _rows(path, "lag,magnitude")
    return Series(label=_label(path),
                  x=[float(r[0]) for r in rows],
                  y=[float(r[1]) for r in rows])


def read_ber(path: Path) -> Series:
    rows = _rows(path, "scheme,snr_db,bits,errors,ber")
    return Series(label=rows[0][0],
                  x=[float(r[1]) for r in rows],
                  y=[float(r[4]) for r in rows])


def read_surface(path: Path) -> Surface:
    rows = _rows(path, "delay,doppler,mag_db")
    return Surface(label=_label(path),
                   delay=[float(r[0]) for r in rows],
                   doppler=[float(r[1]) for r in rows],
                   mag_db=[float(r[2]) for r in rows])
