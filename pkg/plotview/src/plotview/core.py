"""Parse sweep CSVs and render the sum-rate comparison figure.

The input schema is the simulator CLI's sweep output, one row per SNR
point. Values are plotted exactly as parsed; nothing is resampled, and the
gap assertion runs on the parsed numbers, never on rendered pixels.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

SCHEMA = ["snr_db", "bits", "mean_sum_pfb", "mean_sum_lfb", "mean_sum_delta", "stderr_sum_lfb"]


class CurveError(Exception):
    """Missing file, bad schema, or malformed rows."""


@dataclass(frozen=True)
class CurveSpec:
    csv_path: str
    label: str


@dataclass(frozen=True)
class Curve:
    spec: CurveSpec
    snr_db: tuple[float, ...]
    bits: tuple[int, ...]
    mean_sum_pfb: tuple[float, ...]
    mean_sum_lfb: tuple[float, ...]
    mean_sum_delta: tuple[float, ...]
    stderr_sum_lfb: tuple[float, ...]

    def max_gap(self) -> float:
        """Largest perfect-minus-limited sum-rate gap over the rows."""
        return max(p - l for p, l in zip(self.mean_sum_pfb, self.mean_sum_lfb))


def load_curve(spec: CurveSpec) -> Curve:
    path = Path(spec.csv_path)
    if not path.is_file():
        raise CurveError(f"no such file: {spec.csv_path}")
    with open(path, newline="", encoding="ascii") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise CurveError(f"{spec.csv_path}: empty file") from None
        if header != SCHEMA:
            raise CurveError(
                f"{spec.csv_path}: header {','.join(header)!r} does not match "
                f"the sweep schema {','.join(SCHEMA)!r}"
            )
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if len(row) != len(SCHEMA):
                raise CurveError(f"{spec.csv_path}:{lineno}: expected {len(SCHEMA)} fields")
            try:
                rows.append(
                    (float(row[0]), int(row[1]), float(row[2]), float(row[3]),
                     float(row[4]), float(row[5]))
                )
            except ValueError as exc:
                raise CurveError(f"{spec.csv_path}:{lineno}: {exc}") from None
    if not rows:
        raise CurveError(f"{spec.csv_path}: no data rows")
    cols = list(zip(*rows))
    return Curve(
        spec=spec,
        snr_db=cols[0],
        bits=cols[1],
        mean_sum_pfb=cols[2],
        mean_sum_lfb=cols[3],
        mean_sum_delta=cols[4],
        stderr_sum_lfb=cols[5],
    )


def render(
    curves: list[Curve],
    out_path: str,
    with_perfect: bool = False,
    error_bars: bool = False,
) -> None:
    """Write the figure; output format follows the file extension."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7.0, 5.0))
    if with_perfect:
        ref = curves[0]
        ax.plot(
            ref.snr_db, ref.mean_sum_pfb, "k--", marker="s",
            label="perfect feedback",
        )
    for curve in curves:
        if error_bars:
            ax.errorbar(
                curve.snr_db, curve.mean_sum_lfb, yerr=curve.stderr_sum_lfb,
                marker="o", capsize=3, label=curve.spec.label,
            )
        else:
            ax.plot(curve.snr_db, curve.mean_sum_lfb, marker="o", label=curve.spec.label)
    ax.set_xlabel("SNR (dB)")
    ax.set_ylabel("sum rate (bps/Hz)")
    ax.grid(True, alpha=0.4)
    ax.legend()
    fig.tight_layout()
    fig.savefig(out_path)
    plt.close(fig)
