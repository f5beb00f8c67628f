#!/usr/bin/env python3
"""Reproduce the headline sum-rate comparison and emit CSVs for plotting.

Three feedback strategies over an SNR grid:
  * scaled bits  — budget grown like log2(SNR) to cap the loss at log2(2) per
    user (4 bps/Hz total),
  * fixed 10 bits — saturates once quantization noise dominates,
  * fixed 4 bits  — saturates earlier.

Writes demo_out/{scaled,fixed10,fixed4}.csv in the CLI's CSV schema; render
them with the separate `plotview` tool, e.g.

    plotview demo_out/scaled.csv,scaled-B demo_out/fixed10.csv,B=10 \
        demo_out/fixed4.csv,B=4 --with-perfect --out demo_out/sum_rate.png
"""

import pathlib
import sys

from iamac import FixedBits, ScaledBits, SimConfig, SystemDims, run_sweep

TRIALS = int(sys.argv[1]) if len(sys.argv) > 1 else 400
GRID = (0.0, 10.0, 20.0, 30.0, 40.0)
SEED = 7
HEADER = "snr_db,bits,mean_sum_pfb,mean_sum_lfb,mean_sum_delta,stderr_sum_lfb"

out_dir = pathlib.Path(__file__).resolve().parent / "demo_out"
out_dir.mkdir(exist_ok=True)

runs = [
    ("scaled", ScaledBits(tau=2.0, a_sum=4.5)),
    ("fixed10", FixedBits(bits=10)),
    ("fixed4", FixedBits(bits=4)),
]

for name, policy in runs:
    cfg = SimConfig(
        dims=SystemDims(),
        snr_grid_db=GRID,
        bit_policy=policy,
        trials=TRIALS,
        master_seed=SEED,
    )
    rows = run_sweep(cfg)
    path = out_dir / f"{name}.csv"
    with open(path, "w", encoding="ascii") as fh:
        fh.write(HEADER + "\n")
        for r in rows:
            fh.write(
                f"{r.snr_db:.6f},{r.bits_used},{r.mean_sum_pfb:.6f},"
                f"{r.mean_sum_lfb:.6f},{r.mean_sum_delta:.6f},{r.stderr_sum_lfb:.6f}\n"
            )
    print(f"--- {name} ({TRIALS} trials/point) -> {path}")
    print("  SNR(dB)  bits   perfect   limited   gap")
    for r in rows:
        print(
            f"  {r.snr_db:6.1f}  {r.bits_used:4d}   {r.mean_sum_pfb:7.2f}   "
            f"{r.mean_sum_lfb:7.2f}   {r.mean_sum_delta:5.2f}"
        )

print("\nThe scaled strategy keeps the gap to perfect feedback below 4 bps/Hz")
print("at every point; the fixed budgets fall off the perfect-feedback curve")
print("once their quantization noise floor takes over.")
