"""End-to-end figure tests: produce CSVs by invoking the otfslab CLI as a
subprocess (the only coupling to the producing package), then render every
figure kind and check the no-reinterpretation contract."""

import csv
import subprocess
import sys

import pytest

from otfsplots import InputError, render
from otfsplots.cli import main as plots_main


def run_otfslab(args, cwd):
    return subprocess.run([sys.executable, "-m", "otfslab.cli", *args],
                          cwd=cwd, capture_output=True, text=True)


@pytest.fixture(scope="module")
def results_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("results")
    for args in (["cuts"],
                 ["ambiguity"],
                 ["range"],
                 ["ber", "--frames", "200", "--snr", "0,4,8"]):
        proc = run_otfslab(args + ["--out-dir", str(out)], cwd=out)
        assert proc.returncode == 0, proc.stderr
    return out


def csv_column(path, name):
    with open(path) as fh:
        rows = list(csv.DictReader(ln for ln in fh if not ln.startswith("#")))
    return [float(r[name]) for r in rows]


def test_cut_pair_two_panels(results_dir, tmp_path):
    inputs = [results_dir / f"{scheme}_{dim}_cut.csv"
              for dim in ("delay", "doppler") for scheme in ("otfs", "ticp4")]
    out = tmp_path / "cuts.png"
    extrema = render("cut_pair", inputs, out)
    assert out.stat().st_size > 0
    assert len(extrema) == 4
    for path in inputs:
        values = csv_column(path, "mag_db")
        assert extrema[path.stem] == (min(values), max(values))


def test_contour_pair(results_dir, tmp_path):
    inputs = [results_dir / "otfs_ambiguity.csv", results_dir / "ticp4_ambiguity.csv"]
    out = tmp_path / "surfaces.png"
    extrema = render("contour_pair", inputs, out)
    assert out.stat().st_size > 0
    for path in inputs:
        values = csv_column(path, "mag_db")
        assert extrema[path.stem] == (min(values), max(values))


def test_range_overlay(results_dir, tmp_path):
    inputs = [results_dir / "otfs_range_profile.csv",
              results_dir / "ticp4_range_profile.csv"]
    out = tmp_path / "range.png"
    extrema = render("range_overlay", inputs, out)
    assert out.stat().st_size > 0
    for path in inputs:
        values = csv_column(path, "magnitude")
        assert extrema[path.stem] == (min(values), max(values))


def test_ber_curves(results_dir, tmp_path):
    inputs = [results_dir / "otfs_ber.csv", results_dir / "ticp4_ber.csv"]
    out = tmp_path / "ber.png"
    extrema = render("ber_curves", inputs, out)
    assert out.stat().st_size > 0
    for path, scheme in zip(inputs, ("otfs", "ticp4")):
        values = csv_column(path, "ber")
        assert extrema[scheme] == (min(values), max(values))


def test_all_kinds_via_cli(results_dir, tmp_path):
    jobs = {
        "cut_pair": ["otfs_delay_cut.csv", "ticp4_delay_cut.csv"],
        "contour_pair": ["otfs_ambiguity.csv", "ticp4_ambiguity.csv"],
        "range_overlay": ["otfs_range_profile.csv", "ticp4_range_profile.csv"],
        "ber_curves": ["otfs_ber.csv", "ticp4_ber.csv"],
    }
    for kind, names in jobs.items():
        out = tmp_path / f"{kind}.png"
        argv = [kind, "--out", str(out)]
        for name in names:
            argv += ["--in", str(results_dir / name)]
        assert plots_main(argv) == 0
        assert out.stat().st_size > 0


def test_missing_file_is_an_error(tmp_path):
    code = plots_main(["ber_curves", "--in", str(tmp_path / "nope.csv"),
                       "--out", str(tmp_path / "x.png")])
    assert code == 1


def test_malformed_csv_is_an_error(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("lag,magnitude\n0,not-a-number\n")
    code = plots_main(["range_overlay", "--in", str(bad),
                       "--out", str(tmp_path / "x.png")])
    assert code == 1


def test_wrong_header_is_an_error(tmp_path):
    wrong = tmp_path / "wrong.csv"
    wrong.write_text("foo,bar\n1,2\n")
    with pytest.raises(InputError):
        render("cut_pair", [wrong, wrong], tmp_path / "x.png")


def test_wrong_input_count_is_an_error(tmp_path):
    some = tmp_path / "cut.csv"
    some.write_text("axis,mag_db\n0,0\n")
    with pytest.raises(InputError):
        render("contour_pair", [some], tmp_path / "x.png")
