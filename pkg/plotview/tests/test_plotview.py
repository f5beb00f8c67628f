import subprocess
import sys

import pytest

from plotview.core import SCHEMA, CurveError, CurveSpec, load_curve

PLOTVIEW = [sys.executable, "-m", "plotview.cli"]
HEADER = ",".join(SCHEMA)


def write_csv(path, rows):
    lines = [HEADER]
    for snr, bits, pfb, lfb in rows:
        lines.append(f"{snr:.6f},{bits},{pfb:.6f},{lfb:.6f},{pfb - lfb:.6f},0.100000")
    path.write_text("\n".join(lines) + "\n")
    return path


def run_plotview(*args):
    return subprocess.run(PLOTVIEW + list(args), capture_output=True, text=True, timeout=120)


@pytest.fixture
def small_csv(tmp_path):
    return write_csv(
        tmp_path / "curve.csv",
        [(0.0, 3, 3.4, 2.7), (10.0, 6, 11.4, 9.6), (20.0, 9, 23.3, 20.5)],
    )


def test_load_curve_roundtrip(small_csv):
    curve = load_curve(CurveSpec(csv_path=str(small_csv), label="x"))
    # plotted values are exactly the CSV values, no resampling
    assert curve.snr_db == (0.0, 10.0, 20.0)
    assert curve.bits == (3, 6, 9)
    assert curve.mean_sum_pfb == (3.4, 11.4, 23.3)
    assert curve.mean_sum_lfb == (2.7, 9.6, 20.5)
    assert curve.stderr_sum_lfb == (0.1, 0.1, 0.1)
    assert curve.max_gap() == pytest.approx(2.8)


def test_load_curve_missing_file():
    with pytest.raises(CurveError, match="no such file"):
        load_curve(CurveSpec(csv_path="/nonexistent/rows.csv", label="x"))


def test_load_curve_schema_mismatch(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("snr,rate\n0,1\n")
    with pytest.raises(CurveError, match="schema"):
        load_curve(CurveSpec(csv_path=str(bad), label="x"))


def test_render_smoke(small_csv, tmp_path):
    out = tmp_path / "fig.png"
    res = run_plotview(f"{small_csv},demo", "--out", str(out), "--with-perfect", "--error-bars")
    assert res.returncode == 0
    assert out.is_file() and out.stat().st_size > 0


def test_render_rejects_bad_schema(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("snr,rate\n0,1\n")
    res = run_plotview(str(bad), "--out", str(tmp_path / "fig.png"))
    assert res.returncode == 2
    assert "schema" in res.stderr


def test_render_rejects_missing_file(tmp_path):
    res = run_plotview(str(tmp_path / "absent.csv"), "--out", str(tmp_path / "fig.png"))
    assert res.returncode == 2
    assert "no such file" in res.stderr


def test_assert_gap_exit_codes(small_csv, tmp_path):
    out = tmp_path / "fig.png"
    ok = run_plotview(str(small_csv), "--out", str(out), "--assert-gap", "3.0")
    assert ok.returncode == 0
    assert "within" in ok.stdout
    bad = run_plotview(str(small_csv), "--out", str(out), "--assert-gap", "2.5")
    assert bad.returncode == 1
    assert "EXCEEDS" in bad.stdout


def test_svg_output_by_extension(small_csv, tmp_path):
    out = tmp_path / "fig.svg"
    res = run_plotview(str(small_csv), "--out", str(out))
    assert res.returncode == 0
    assert out.read_text().lstrip().startswith("<?xml")
