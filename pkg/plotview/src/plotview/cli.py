"""plotview CSV[,LABEL]... --out PATH [--with-perfect] [--assert-gap FLOAT]

Exit codes: 0 rendered (and gap within budget), 1 gap assertion failed,
2 bad flags / missing file / schema mismatch.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .core import CurveError, CurveSpec, load_curve, render


def _parse_curve_arg(arg: str) -> CurveSpec:
    if "," in arg:
        path, label = arg.rsplit(",", 1)
    else:
        path, label = arg, Path(arg).stem
    return CurveSpec(csv_path=path, label=label)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="plotview",
        description="Plot sum-rate sweep CSVs (limited-feedback curves, optional "
        "perfect-feedback reference) and optionally assert the rate-loss gap.",
    )
    parser.add_argument("curves", nargs="+", metavar="CSV[,LABEL]")
    parser.add_argument("--out", required=True, help="output image path (format by extension)")
    parser.add_argument(
        "--with-perfect", action="store_true",
        help="also draw the first CSV's perfect-feedback sum rate",
    )
    parser.add_argument(
        "--error-bars", action="store_true",
        help="draw standard-error bars on the limited-feedback curves",
    )
    parser.add_argument(
        "--assert-gap", type=float, metavar="G",
        help="exit 1 if any curve's max (perfect - limited) gap exceeds G bps/Hz",
    )
    args = parser.parse_args(argv)

    try:
        curves = [load_curve(_parse_curve_arg(a)) for a in args.curves]
        render(curves, args.out, with_perfect=args.with_perfect, error_bars=args.error_bars)
    except CurveError as exc:
        print(f"plotview: {exc}", file=sys.stderr)
        return 2

    if args.assert_gap is not None:
        failed = False
        for curve in curves:
            gap = curve.max_gap()
            status = "within" if gap <= args.assert_gap else "EXCEEDS"
            print(f"{curve.spec.label}: max gap {gap:.3f} bps/Hz {status} {args.assert_gap:.3f}")
            failed |= gap > args.assert_gap
        if failed:
            return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
