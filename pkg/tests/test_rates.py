import math

import numpy as np
import pytest

from iamac.alignment import design_network
from iamac.channel import SystemDims, draw_channels, serving_cell
from iamac.errors import DegenerateGrid, DimensionMismatch, InvalidTau
from iamac.numerics import derive_stream, draw_complex_gaussian, unit_normalize
from iamac.rates import (
    BoundParams,
    RateReport,
    SnrPoint,
    effective_channel,
    feedback_bits_exact,
    feedback_bits_required,
    multiplexing_gain,
    rate_limited,
    rate_loss_bound,
    rate_perfect,
)

from oracles import limited_rate_scalar, slope_scalar


def _trial(seed):
    ch = draw_channels(SystemDims(), derive_stream(seed, 0))
    pre, comb = design_network(ch)
    return ch, pre, comb


def test_snr_point_roundtrip():
    p = SnrPoint.from_db(20.0)
    assert p.snr_linear == pytest.approx(100.0)
    q = SnrPoint.from_linear(1000.0)
    assert q.snr_db == pytest.approx(30.0)
    with pytest.raises(ValueError):
        SnrPoint(snr_linear=100.0, snr_db=10.0)
    with pytest.raises(ValueError):
        SnrPoint(snr_linear=-1.0, snr_db=0.0)


def test_effective_channel_selector_row():
    h = draw_complex_gaussian(3, 2, derive_stream(5))
    w = np.array([1.0, 0.0, 0.0], dtype=complex)
    np.testing.assert_allclose(effective_channel(w, h), h[0].conj())


def test_effective_channel_norm_bound():
    rng = derive_stream(6)
    for _ in range(50):
        h = draw_complex_gaussian(3, 2, rng)
        w = unit_normalize(draw_complex_gaussian(1, 3, rng)[0])
        assert np.linalg.norm(effective_channel(w, h)) <= np.linalg.norm(h, 2) + 1e-12


def test_effective_channel_shape_guard():
    with pytest.raises(DimensionMismatch):
        effective_channel(np.ones(2, dtype=complex), np.ones((3, 2), dtype=complex))


def test_rate_perfect_unit_gain():
    # engineered so |w^H H v| = 1 exactly: log2(1 + 1*1) = 1 bps/Hz
    ch, pre, comb = _trial(7)
    h = ch.h.copy()
    i, k = 0, serving_cell(0)
    gain = np.vdot(comb.w[i], h[k, i] @ pre.v[i])
    h[k, i] = h[k, i] / abs(gain)
    ch2 = type(ch)(h=h)
    assert rate_perfect(ch2, comb, pre.v, i, SnrPoint.from_linear(1.0)) == pytest.approx(1.0, abs=1e-9)


def test_rate_perfect_vanishes_at_zero_power():
    ch, pre, comb = _trial(8)
    assert rate_perfect(ch, comb, pre.v, 0, SnrPoint.from_linear(1e-12)) < 1e-6


def test_rate_perfect_matches_full_denominator():
    # including the numerically-zero interference terms changes nothing
    for seed in range(30):
        ch, pre, comb = _trial(900 + seed)
        snr = SnrPoint.from_db(30.0)
        for i in range(4):
            k = serving_cell(i)
            interference = sum(
                abs(np.vdot(comb.w[i], ch.h[k, m] @ pre.v[m])) ** 2 for m in range(4) if m != i
            )
            sig = abs(np.vdot(comb.w[i], ch.h[k, i] @ pre.v[i])) ** 2
            with_floor = math.log2(
                1 + snr.snr_linear * sig / (1 + snr.snr_linear * interference)
            )
            # >= up to one ulp: the ~1e-20 interference floor only moves rounding
            assert rate_perfect(ch, comb, pre.v, i, snr) >= with_floor - 1e-12
            assert rate_perfect(ch, comb, pre.v, i, snr) - with_floor <= 1e-8


def test_rate_limited_perfect_quantization_limit():
    for seed in range(20):
        ch, pre, comb = _trial(1000 + seed)
        snr = SnrPoint.from_db(20.0)
        for i in range(4):
            assert rate_limited(ch, comb, pre.v, i, snr) == pytest.approx(
                rate_perfect(ch, comb, pre.v, i, snr), abs=1e-8
            )


def test_rate_limited_zero_power_limit():
    ch, pre, comb = _trial(9)
    assert rate_limited(ch, comb, pre.v, 0, SnrPoint.from_linear(1e-9)) <= 1e-6


def test_rate_limited_matches_scalar_oracle():
    rng = derive_stream(303)
    snr = SnrPoint.from_db(20.0)
    for seed in range(100):
        ch, pre, comb = _trial(1100 + seed)
        # perturb the transmitted vectors like a coarse quantizer would
        vhat = np.array(
            [unit_normalize(v + 0.2 * draw_complex_gaussian(1, 2, rng)[0]) for v in pre.v]
        )
        for i in range(4):
            ref = limited_rate_scalar(
                ch.h.tolist(), comb.w.tolist(), vhat.tolist(), i, snr.snr_linear
            )
            assert rate_limited(ch, comb, vhat, i, snr) == pytest.approx(ref, abs=1e-9)


def test_rate_loss_bound_limits():
    p_inf = BoundParams(tau=2.0, a=(1.5, 1.5, 1.5), m=2, bits=1e6)
    assert rate_loss_bound(p_inf, SnrPoint.from_db(30.0)) <= 1e-9
    p = BoundParams(tau=2.0, a=(1.5, 1.5, 1.5), m=2, bits=4)
    assert rate_loss_bound(p, SnrPoint.from_linear(1e-12)) <= 1e-9


def test_bound_identity_at_exact_bits():
    # substituting the un-ceilinged scaling-law bit count makes the bound
    # exactly log2(tau), for any snr / tau / gains
    cases = [
        (SnrPoint.from_db(30.0), 2.0, (1.5, 1.5, 1.5)),
        (SnrPoint.from_db(7.0), 1.3, (0.9, 2.0, 1.1)),
        (SnrPoint.from_linear(3.7), 5.0, (1.0, 1.0, 4.0)),
    ]
    for snr, tau, a in cases:
        bits = feedback_bits_exact(snr, tau, 2, sum(a))
        bound = rate_loss_bound(BoundParams(tau=tau, a=a, m=2, bits=bits), snr)
        assert bound == pytest.approx(math.log2(tau), abs=1e-9)


def test_feedback_bits_spot_values():
    assert feedback_bits_required(SnrPoint.from_db(30.0), 2.0, 2, 4.5) == 13
    assert feedback_bits_required(SnrPoint.from_linear(1000.0), 2.0, 2, 4.5) == 13
    # a_sum/(tau-1) = 1 makes the constant vanish
    assert feedback_bits_required(SnrPoint.from_linear(1024.0), 2.0, 2, 1.0) == 10
    # snr = 1 leaves only the constant, floored at zero
    assert feedback_bits_required(SnrPoint.from_linear(1.0), 2.0, 2, 1.0) == 0
    assert feedback_bits_required(SnrPoint.from_linear(1.0), 2.0, 2, 4.5) == math.ceil(
        math.log2(4.5)
    )
    with pytest.raises(InvalidTau):
        feedback_bits_required(SnrPoint.from_db(30.0), 1.0, 2, 4.5)


def test_multiplexing_gain_synthetic():
    pts = [(100.0, 4 * math.log2(100.0)), (1000.0, 4 * math.log2(1000.0))]
    assert multiplexing_gain(pts) == pytest.approx(4.0, abs=1e-12)
    assert multiplexing_gain(pts) == pytest.approx(
        slope_scalar([math.log2(p[0]) for p in pts], [p[1] for p in pts]), abs=1e-12
    )
    flat = [(100.0, 5.0), (1000.0, 5.0), (10000.0, 5.0)]
    assert multiplexing_gain(flat) == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(DegenerateGrid):
        multiplexing_gain([(100.0, 1.0), (100.0, 2.0)])
    with pytest.raises(DegenerateGrid):
        multiplexing_gain([(100.0, 1.0)])


def test_rate_report_consistency():
    rep = RateReport.from_rates([1.0, 2.0, 3.0, 4.0], [0.5, 1.5, 2.5, 3.5])
    assert rep.sum_pfb == pytest.approx(10.0)
    assert rep.sum_lfb == pytest.approx(8.0)
    assert rep.sum_delta == pytest.approx(2.0)
    np.testing.assert_allclose(rep.delta, rep.r_pfb - rep.r_lfb)
    assert abs(rep.sum_delta - (rep.sum_pfb - rep.sum_lfb)) <= 1e-9
    assert (rep.r_pfb >= 0).all() and (rep.r_lfb >= 0).all()
