"""Command-line driver for the four desk-scale experiments.

Commands: cuts, ambiguity, range, ber, selftest. Each command reads an
optional JSON config (--config) with flag overrides winning, writes CSV
result files into --out-dir, and logs progress to stderr. Every emitted
CSV starts with a comment line recording the resolved-config hash and
seed, so identical (config, seed) pairs give byte-identical outputs.

Exit codes: 0 success, 1 validation error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

import numpy as np

from . import selfcheck
from .ambiguity import ambiguity_surface, cut_to_csv, delay_cut, doppler_cut, surface_to_csv
from .channel import uniform_power_channel
from .grid import DDFrame, GridError, new_grid
from .modem import Scheme, modulate, pulse_shape
from .radar import detect_peaks, profile_to_csv, range_scenario
from .receiver import ber_experiment, ber_to_csv

DEFAULTS = {
    "M": 8,
    "N": 4,
    "T": 1.0,
    "oversampling": 4,
    "schemes": ["otfs", "ticp4"],
    "seed": 0,
    "out_dir": ".",
    # cuts / ambiguity
    "points": None,
    "max_lag": None,
    "doppler_points": None,
    # range
    "delays": [1, 4, 7],
    "dopplers": [0, 0, 0],
    "threshold": 0.5,
    "min_separation": 2,
    # ber
    "snr": [0, 2, 4, 6, 8, 10, 12, 14, 16, 18, 20],
    "frames": 10000,
    "channel_delays": [0, 1, 2, 3],
    "channel_dopplers": [0, 1, 2, 3],
}


def _int_list(text: str) -> list[int]:
    return [int(v) for v in text.split(",") if v.strip() != ""]


def _float_list(text: str) -> list[float]:
    return [float(v) for v in text.split(",") if v.strip() != ""]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="otfslab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("cuts", "ambiguity", "range", "ber", "selftest"):
        p = sub.add_parser(name)
        p.add_argument("--config", type=Path, default=None)
        p.add_argument("--M", type=int, default=None)
        p.add_argument("--N", type=int, default=None)
        p.add_argument("--T", type=float, default=None)
        p.add_argument("--oversampling", type=int, default=None)
        p.add_argument("--schemes", "--scheme", dest="schemes", type=str, default=None,
                       help="comma-separated: otfs,ticp4")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--out-dir", dest="out_dir", type=Path, default=None)
        if name == "cuts":
            p.add_argument("--points", type=int, default=None)
        if name == "ambiguity":
            p.add_argument("--max-lag", dest="max_lag", type=int, default=None)
            p.add_argument("--doppler-points", dest="doppler_points", type=int, default=None)
        if name == "range":
            p.add_argument("--delays", type=_int_list, default=None)
            p.add_argument("--dopplers", type=_int_list, default=None)
            p.add_argument("--threshold", type=float, default=None)
            p.add_argument("--min-separation", dest="min_separation", type=int, default=None)
        if name == "ber":
            p.add_argument("--snr", type=_float_list, default=None)
            p.add_argument("--frames", type=int, default=None)
            p.add_argument("--channel-delays", dest="channel_delays", type=_int_list, default=None)
            p.add_argument("--channel-dopplers", dest="channel_dopplers", type=_int_list,
                           default=None)
    return parser


def resolve_config(args: argparse.Namespace) -> dict:
    config = dict(DEFAULTS)
    if getattr(args, "config", None) is not None:
        with open(args.config) as fh:
            file_cfg = json.load(fh)
        unknown = set(file_cfg) - set(DEFAULTS) - {"command"}
        if unknown:
            raise GridError(f"unknown config keys: {sorted(unknown)}")
        config.update({k: v for k, v in file_cfg.items() if k != "command"})
    for key in DEFAULTS:
        value = getattr(args, key, None)
        if value is not None:
            config[key] = value
    if isinstance(config["schemes"], str):
        config["schemes"] = config["schemes"].split(",")
    config["command"] = args.command
    config["out_dir"] = str(config["out_dir"])
    return config


def config_hash(config: dict) -> str:
    # the output location is not part of the experiment definition
    hashed = {k: v for k, v in config.items() if k != "out_dir"}
    canonical = json.dumps(hashed, sort_keys=True, default=str)
    return hashlib.sha256(canonical.encode()).hexdigest()[:12]


def _write(path: Path, config: dict, body: str) -> None:
    header = f"# config_hash={config_hash(config)} seed={config['seed']}\n"
    path.write_text(header + body)
    print(f"wrote {path}", file=sys.stderr)


def _grid(config: dict):
    return new_grid(config["M"], config["N"], config["T"], config["oversampling"])


def _schemes(config: dict) -> list[Scheme]:
    return [Scheme.parse(name) for name in config["schemes"]]


def _probe_signal(grid, scheme: Scheme):
    probe = DDFrame(grid=grid, data=np.ones((grid.M, grid.N)))
    return pulse_shape(modulate(probe, scheme), grid)


def cmd_cuts(config: dict) -> int:
    grid = _grid(config)
    out = Path(config["out_dir"])
    out.mkdir(parents=True, exist_ok=True)
    for scheme in _schemes(config):
        shaped = _probe_signal(grid, scheme)
        _write(out / f"{scheme.value}_delay_cut.csv", config, cut_to_csv(delay_cut(shaped)))
        _write(out / f"{scheme.value}_doppler_cut.csv", config,
               cut_to_csv(doppler_cut(shaped, points=config["points"])))
    return 0


def cmd_ambiguity(config: dict) -> int:
    grid = _grid(config)
    out = Path(config["out_dir"])
    out.mkdir(parents=True, exist_ok=True)
    for scheme in _schemes(config):
        shaped = _probe_signal(grid, scheme)
        surface = ambiguity_surface(shaped, max_lag=config["max_lag"],
                                    doppler_points=config["doppler_points"])
        _write(out / f"{scheme.value}_ambiguity.csv", config, surface_to_csv(surface))
    return 0


def cmd_range(config: dict) -> int:
    grid = _grid(config)
    out = Path(config["out_dir"])
    out.mkdir(parents=True, exist_ok=True)
    summary = {}
    for scheme in _schemes(config):
        profile = range_scenario(grid, scheme, config["delays"], config["dopplers"])
        peaks = detect_peaks(profile, min_separation=config["min_separation"],
                             threshold=config["threshold"])
        _write(out / f"{scheme.value}_range_profile.csv", config, profile_to_csv(profile))
        summary[scheme.value] = [{"lag": p.lag, "magnitude": p.magnitude} for p in peaks]
    print(json.dumps({"detected_peaks": summary}))
    return 0


def cmd_ber(config: dict) -> int:
    grid = _grid(config)
    out = Path(config["out_dir"])
    out.mkdir(parents=True, exist_ok=True)
    profile = uniform_power_channel(config["channel_delays"], config["channel_dopplers"])
    for scheme in _schemes(config):
        print(f"ber sweep: {scheme.value}, {config['frames']} frames x "
              f"{len(config['snr'])} SNR points", file=sys.stderr)
        points = ber_experiment(grid, scheme, config["snr"], config["frames"],
                                profile, config["seed"])
        _write(out / f"{scheme.value}_ber.csv", config, ber_to_csv(scheme, points))
    return 0


def cmd_selftest(config: dict) -> int:
    passed, failed, lines = selfcheck.run(seed=config["seed"])
    for line in lines:
        print(line, file=sys.stderr)
    print(f"selftest: {passed} passed, {failed} failed")
    return 0 if failed == 0 else 2


COMMANDS = {
    "cuts": cmd_cuts,
    "ambiguity": cmd_ambiguity,
    "range": cmd_range,
    "ber": cmd_ber,
    "selftest": cmd_selftest,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = resolve_config(args)
        return COMMANDS[args.command](config)
    except (GridError, OSError, json.JSONDecodeError, ValueError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}),
              file=sys.stderr)
        return 1
    except np.linalg.LinAlgError as exc:
        print(json.dumps({"error": "LinAlgError", "message": str(exc)}), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
