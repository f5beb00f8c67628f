"""Command-line front end: sweeps, the verification suite, and the two
feedback-budget calculators.

Exit codes: 0 success, 1 failed verification, 2 bad flags or parameters.
All commands take --seed and default to a fixed constant (not wall clock),
so identical invocations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import sys

from . import experiments
from .channel import SystemDims
from .errors import InvalidTau, UnsupportedDims
from .experiments import DEFAULT_SEED, FixedBits, ScaledBits, SimConfig
from .rates import BoundParams, SnrPoint, feedback_bits_exact, feedback_bits_required, rate_loss_bound

CSV_HEADER = "snr_db,bits,mean_sum_pfb,mean_sum_lfb,mean_sum_delta,stderr_sum_lfb"


def _parse_snr_grid(text: str) -> tuple[float, ...]:
    """Parse 'start:stop:step' in dB, inclusive of stop when it lands on the grid."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"--snr expects start:stop:step, got {text!r}")
    start, stop, step = (float(p) for p in parts)
    if step <= 0 or stop < start:
        raise ValueError(f"--snr needs step > 0 and stop >= start, got {text!r}")
    grid = []
    k = 0
    while True:
        value = start + k * step
        if value > stop + 1e-9:
            break
        grid.append(value)
        k += 1
    return tuple(grid)


def _parse_a_list(text: str) -> tuple[float, float, float]:
    values = tuple(float(p) for p in text.split(","))
    if len(values) != 3:
        raise ValueError(f"--a expects three comma-separated values, got {text!r}")
    return values


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="iamac",
        description="Two-cell two-user MIMO uplink: aligned precoding with quantized feedback",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="Monte Carlo sum-rate sweep, CSV output")
    sweep.add_argument("--snr", required=True, help="SNR grid in dB as start:stop:step")
    sweep.add_argument("--policy", choices=("fixed", "scaled"), default="scaled")
    sweep.add_argument("--bits", type=int, help="feedback bits for --policy fixed")
    sweep.add_argument("--tau", type=float, default=2.0, help="rate-loss budget factor")
    sweep.add_argument("--a-sum", type=float, default=4.5, help="summed interference gains")
    sweep.add_argument("--trials", type=int, default=2000)
    sweep.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sweep.add_argument("--m", type=int, default=2, help="transmit antennas per user")
    sweep.add_argument("--n", type=int, default=3, help="receive antennas per base station")
    sweep.add_argument("--out", help="write CSV here instead of stdout")

    verify = sub.add_parser("verify", help="run the statistical verification suite")
    verify.add_argument("--only", help="run a single named test")
    verify.add_argument("--trials", type=int, help="trial count (clamped up to each test's minimum)")
    verify.add_argument("--seed", type=int, default=DEFAULT_SEED)

    bits = sub.add_parser("bits", help="feedback bits needed at one SNR point")
    bits.add_argument("--snr-db", type=float, required=True)
    bits.add_argument("--tau", type=float, required=True)
    bits.add_argument("--a-sum", type=float, required=True)
    bits.add_argument("--m", type=int, default=2)
    bits.add_argument("--seed", type=int, default=DEFAULT_SEED)

    bound = sub.add_parser("bound", help="per-user rate-loss bound at one SNR point")
    bound.add_argument("--snr-db", type=float, required=True)
    bound.add_argument(
        "--bits",
        type=float,
        help="bit count; omitted = un-ceilinged scaling-law bits for --tau",
    )
    bound.add_argument("--tau", type=float, default=2.0)
    bound.add_argument("--a", default="1.5,1.5,1.5", help="three interference gains")
    bound.add_argument("--m", type=int, default=2)
    bound.add_argument("--seed", type=int, default=DEFAULT_SEED)

    return parser


def _format_row(row: experiments.SweepRow) -> str:
    return (
        f"{row.snr_db:.6f},{row.bits_used},{row.mean_sum_pfb:.6f},"
        f"{row.mean_sum_lfb:.6f},{row.mean_sum_delta:.6f},{row.stderr_sum_lfb:.6f}"
    )


def _cmd_sweep(args: argparse.Namespace) -> int:
    grid = _parse_snr_grid(args.snr)
    if args.policy == "fixed":
        if args.bits is None:
            raise ValueError("--policy fixed requires --bits")
        policy: FixedBits | ScaledBits = FixedBits(bits=args.bits)
    else:
        policy = ScaledBits(tau=args.tau, a_sum=args.a_sum)
    cfg = SimConfig(
        dims=SystemDims(tx_antennas=args.m, rx_antennas=args.n),
        snr_grid_db=grid,
        bit_policy=policy,
        trials=args.trials,
        master_seed=args.seed,
    )
    lines = [CSV_HEADER]
    lines.extend(_format_row(r) for r in experiments.run_sweep(cfg))
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    only = [args.only] if args.only else None
    reports = experiments.run_verification_suite(only=only, trials=args.trials, seed=args.seed)
    all_passed = True
    for rep in reports:
        flag = "PASS" if rep.passed else "FAIL"
        all_passed &= rep.passed
        print(
            f"{flag} {rep.name:<26} statistic={rep.statistic:<12.6g} "
            f"threshold={rep.threshold:<12.6g} trials={rep.trials}"
        )
        if rep.detail:
            print(f"     {rep.detail}")
    print(f"{'all tests passed' if all_passed else 'SOME TESTS FAILED'} "
          f"({sum(r.passed for r in reports)}/{len(reports)})")
    return 0 if all_passed else 1


def _cmd_bits(args: argparse.Namespace) -> int:
    snr = SnrPoint.from_db(args.snr_db)
    print(feedback_bits_required(snr, args.tau, args.m, args.a_sum))
    return 0


def _cmd_bound(args: argparse.Namespace) -> int:
    snr = SnrPoint.from_db(args.snr_db)
    a = _parse_a_list(args.a)
    bits = args.bits
    if bits is None:
        bits = feedback_bits_exact(snr, args.tau, args.m, sum(a))
    params = BoundParams(tau=args.tau, a=a, m=args.m, bits=bits)
    print(f"{rate_loss_bound(params, snr):.6f}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "sweep": _cmd_sweep,
        "verify": _cmd_verify,
        "bits": _cmd_bits,
        "bound": _cmd_bound,
    }
    try:
        return handlers[args.command](args)
    except (ValueError, KeyError, InvalidTau, UnsupportedDims) as exc:
        print(f"iamac {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
