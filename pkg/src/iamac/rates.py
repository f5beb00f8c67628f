"""Per-user Shannon rates, the quantization rate-loss bound, and the
feedback-bit scaling law.

All rates are log2-based (bps/Hz) with noise power 1 and transmit power
equal to the linear SNR, so only the ratio ever enters.

Under perfect feedback the combiners null every interference term exactly,
so the per-user rate is log2(1 + SNR |w^H H v|^2). Under limited feedback
the users transmit quantized precoders while the combiners are still built
from the true ones (the base stations exchange those over the backhaul), so
residual interference leaks through every cross link:

    rate = log2(1 + SNR |g_i^H v_hat_i|^2 / (1 + SNR sum_{m != i} |g_m^H v_hat_m|^2)),

with g_m = H[k, m]^H w_i the effective channel after combining at the
serving base station k.

The expected per-user rate loss of quantized feedback is bounded by
log2(1 + SNR * sum_j A_j * 2^(-B/(M-1))) over the user's three interferers,
where A_j is the mean squared norm of the effective interference channel.
Holding that bound at log2(tau) yields the bit scaling law
B >= (M-1) log2(SNR) + (M-1) log2(sum_j A_j / (tau-1)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .alignment import CombinerSet
from .channel import ChannelSet, serving_cell
from .errors import DegenerateGrid, DimensionMismatch, InvalidTau

N_INTERFERERS = 3


@dataclass(frozen=True)
class SnrPoint:
    """One SNR operating point, kept consistent in linear and dB form."""

    snr_linear: float
    snr_db: float

    def __post_init__(self) -> None:
        if self.snr_linear <= 0.0:
            raise ValueError(f"snr_linear must be positive, got {self.snr_linear}")
        if abs(10.0 * math.log10(self.snr_linear) - self.snr_db) > 1e-9:
            raise ValueError(
                f"snr_db={self.snr_db} inconsistent with snr_linear={self.snr_linear}"
            )

    @classmethod
    def from_db(cls, db: float) -> "SnrPoint":
        return cls(snr_linear=10.0 ** (db / 10.0), snr_db=float(db))

    @classmethod
    def from_linear(cls, linear: float) -> "SnrPoint":
        return cls(snr_linear=float(linear), snr_db=10.0 * math.log10(linear))


@dataclass(frozen=True, eq=False)
class RateReport:
    """Per-trial rates for all four users under both feedback regimes."""

    r_pfb: np.ndarray   # (4,) perfect-feedback rates, bps/Hz
    r_lfb: np.ndarray   # (4,) limited-feedback rates, bps/Hz
    delta: np.ndarray   # (4,) r_pfb - r_lfb
    sum_pfb: float
    sum_lfb: float
    sum_delta: float

    @classmethod
    def from_rates(cls, r_pfb: Sequence[float], r_lfb: Sequence[float]) -> "RateReport":
        r_pfb = np.asarray(r_pfb, dtype=float)
        r_lfb = np.asarray(r_lfb, dtype=float)
        delta = r_pfb - r_lfb
        return cls(
            r_pfb=r_pfb,
            r_lfb=r_lfb,
            delta=delta,
            sum_pfb=float(r_pfb.sum()),
            sum_lfb=float(r_lfb.sum()),
            sum_delta=float(delta.sum()),
        )


@dataclass(frozen=True)
class BoundParams:
    """Inputs to the rate-loss bound for one user.

    `bits` may be a non-integer: evaluating the bound at the un-ceilinged
    scaling-law bit count returns exactly log2(tau).
    """

    tau: float
    a: tuple[float, float, float]  # mean squared interference gains A_j
    m: int                         # transmit antennas
    bits: float

    def __post_init__(self) -> None:
        if self.tau <= 1.0:
            raise InvalidTau(f"tau must exceed 1, got {self.tau}")
        if any(aj <= 0.0 for aj in self.a):
            raise ValueError(f"interference gains must be positive, got {self.a}")


def effective_channel(w: np.ndarray, h: np.ndarray) -> np.ndarray:
    """Channel seen through the combiner: g with g^H = w^H h, i.e. g = h^H w."""
    w = np.asarray(w)
    h = np.asarray(h)
    if h.ndim != 2 or w.shape != (h.shape[0],):
        raise DimensionMismatch(f"combiner {w.shape} vs channel {h.shape}")
    return h.conj().T @ w


def rate_perfect(
    ch: ChannelSet,
    comb: CombinerSet,
    v: np.ndarray | Mapping[int, np.ndarray],
    user: int,
    snr: SnrPoint,
) -> float:
    """Interference-free rate log2(1 + SNR |w^H H v|^2) for `user`.

    Valid for the true aligned precoders, whose cross terms the combiner
    nulls to the 1e-10 floor.
    """
    k = serving_cell(user)
    gain = np.abs(np.vdot(comb.w[user], ch.h[k, user] @ v[user])) ** 2
    return float(np.log2(1.0 + snr.snr_linear * gain))


def rate_limited(
    ch: ChannelSet,
    comb: CombinerSet,
    vhat: np.ndarray | Mapping[int, np.ndarray],
    user: int,
    snr: SnrPoint,
) -> float:
    """Rate of `user` when all four users transmit quantized precoders.

    The combiner was designed for the true precoders, so all three other
    users (in-cell and out-of-cell alike) leak residual interference.
    """
    k = serving_cell(user)
    w = comb.w[user]
    gains = np.empty(4)
    for m in range(4):
        gains[m] = np.abs(np.vdot(w, ch.h[k, m] @ vhat[m])) ** 2
    signal = gains[user]
    interference = gains.sum() - signal
    sinr = snr.snr_linear * signal / (1.0 + snr.snr_linear * interference)
    return float(np.log2(1.0 + sinr))


def rate_loss_bound(p: BoundParams, snr: SnrPoint) -> float:
    """Upper bound on the expected per-user rate loss of quantized feedback."""
    err = 2.0 ** (-p.bits / (p.m - 1))
    return float(np.log2(1.0 + snr.snr_linear * sum(p.a) * err))


def feedback_bits_exact(snr: SnrPoint, tau: float, m: int, a_sum: float) -> float:
    """Real-valued bit count that pins the rate-loss bound at exactly log2(tau)."""
    if tau <= 1.0:
        raise InvalidTau(f"tau must exceed 1, got {tau}")
    if a_sum <= 0.0:
        raise ValueError(f"a_sum must be positive, got {a_sum}")
    return (m - 1) * (math.log2(snr.snr_linear) + math.log2(a_sum / (tau - 1.0)))


def feedback_bits_required(snr: SnrPoint, tau: float, m: int, a_sum: float) -> int:
    """Smallest integer bit count keeping the rate loss within log2(tau).

    Ceiling of the real-valued scaling law, floored at zero.
    """
    return max(0, math.ceil(feedback_bits_exact(snr, tau, m, a_sum)))


def multiplexing_gain(points: Sequence[tuple[float, float]]) -> float:
    """Least-squares slope of sum rate against log2(linear SNR).

    `points` holds (snr_linear, sum_rate) pairs; at least two distinct SNRs
    are required.
    """
    if len(points) < 2:
        raise DegenerateGrid("need at least two (snr, rate) points")
    snrs = np.array([p[0] for p in points], dtype=float)
    rates = np.array([p[1] for p in points], dtype=float)
    if np.ptp(snrs) == 0.0:
        raise DegenerateGrid("all SNR values are equal")
    slope, _ = np.polyfit(np.log2(snrs), rates, 1)
    return float(slope)
