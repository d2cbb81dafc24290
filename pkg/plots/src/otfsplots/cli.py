"""Standalone figure renderer for otfslab CSV outputs.

Usage: otfsplots <kind> --in a.csv [--in b.csv ...] --out figure.png
Kinds: cut_pair, contour_pair, range_overlay, ber_curves.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .readers import InputError
from .render import KINDS, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="otfsplots", description=__doc__)
    parser.add_argument("kind", choices=sorted(KINDS))
    parser.add_argument("--in", dest="inputs", type=Path, action="append",
                        required=True, help="input CSV (repeatable, order matters)")
    parser.add_argument("--out", type=Path, required=True, help="output image path")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        extrema = render(args.kind, args.inputs, args.out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for label, (lo, hi) in extrema.items():
        print(f"{label}: min={lo:.17g} max={hi:.17g}")
    print(f"wrote {args.out}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
