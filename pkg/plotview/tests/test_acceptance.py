"""Acceptance: render real sweep output and make the gap claim scriptable.

The CSVs come from the simulator's own CLI (the only coupling between the
two packages is that file schema), so this doubles as an end-to-end check.
"""

import subprocess
import sys

import pytest

IAMAC = [sys.executable, "-m", "iamac.cli"]
PLOTVIEW = [sys.executable, "-m", "plotview.cli"]

TRIALS = "300"
SEED = "12345"
GRID = "10:40:15"  # 10, 25, 40 dB: the 40 dB point is deep in saturation for B=4


@pytest.fixture(scope="module")
def sweep_csvs(tmp_path_factory):
    out_dir = tmp_path_factory.mktemp("sweeps")
    jobs = {
        "scaled": ["--policy", "scaled", "--tau", "2", "--a-sum", "4.5"],
        "fixed10": ["--policy", "fixed", "--bits", "10"],
        "fixed4": ["--policy", "fixed", "--bits", "4"],
    }
    paths = {}
    for name, flags in jobs.items():
        path = out_dir / f"{name}.csv"
        res = subprocess.run(
            IAMAC
            + ["sweep", "--snr", GRID, "--trials", TRIALS, "--seed", SEED]
            + flags
            + ["--out", str(path)],
            capture_output=True,
            text=True,
            timeout=600,
        )
        assert res.returncode == 0, res.stderr
        paths[name] = path
    return paths


def test_three_curve_figure(sweep_csvs, tmp_path):
    out = tmp_path / "sum_rate.png"
    res = subprocess.run(
        PLOTVIEW
        + [
            f"{sweep_csvs['scaled']},scaled bits",
            f"{sweep_csvs['fixed10']},B=10",
            f"{sweep_csvs['fixed4']},B=4",
            "--with-perfect",
            "--error-bars",
            "--out",
            str(out),
        ],
        capture_output=True,
        text=True,
        timeout=120,
    )
    print(("PASS" if res.returncode == 0 else "FAIL") + " — three-curve figure rendered")
    assert res.returncode == 0, res.stderr
    assert out.is_file() and out.stat().st_size > 0


def test_gap_assertion_splits_policies(sweep_csvs, tmp_path):
    out = tmp_path / "fig.png"
    scaled = subprocess.run(
        PLOTVIEW + [str(sweep_csvs["scaled"]), "--out", str(out), "--assert-gap", "4.3"],
        capture_output=True, text=True, timeout=120,
    )
    fixed4 = subprocess.run(
        PLOTVIEW + [str(sweep_csvs["fixed4"]), "--out", str(out), "--assert-gap", "4.3"],
        capture_output=True, text=True, timeout=120,
    )
    ok = scaled.returncode == 0 and fixed4.returncode == 1
    print(
        ("PASS" if ok else "FAIL")
        + " — --assert-gap 4.3 passes the scaled-bits sweep and fails the fixed-4-bit sweep"
    )
    assert scaled.returncode == 0, scaled.stdout + scaled.stderr
    assert fixed4.returncode == 1, fixed4.stdout + fixed4.stderr
