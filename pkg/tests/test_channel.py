import numpy as np
import pytest

from iamac.channel import ChannelSet, SystemDims, draw_channels, serving_cell
from iamac.errors import UnsupportedDims
from iamac.numerics import derive_stream

from oracles import rank_eigh


def test_draw_channels_deterministic():
    a = draw_channels(SystemDims(), derive_stream(9, 0))
    b = draw_channels(SystemDims(), derive_stream(9, 0))
    assert np.array_equal(a.h, b.h)


def test_unsupported_dims_rejected():
    with pytest.raises(UnsupportedDims):
        SystemDims(tx_antennas=3, rx_antennas=3)
    with pytest.raises(UnsupportedDims):
        SystemDims(tx_antennas=2, rx_antennas=2)


def test_every_matrix_full_rank():
    for seed in range(200):
        ch = draw_channels(SystemDims(), derive_stream(17, seed))
        for j in range(2):
            for i in range(4):
                assert rank_eigh(ch.h[j, i]) == 2
        sigma = np.linalg.svd(ch.h, compute_uv=False)
        assert sigma[..., -1].min() > 1e-8


def test_entry_statistics_over_many_draws():
    # mean squared magnitude of every entry position stays within 1 +- 0.05
    trials = 10_000
    acc = np.zeros((2, 4, 3, 2))
    for t in range(trials):
        ch = draw_channels(SystemDims(), derive_stream(23, t))
        acc += np.abs(ch.h) ** 2
    acc /= trials
    assert acc.max() < 1.05
    assert acc.min() > 0.95


def test_channel_set_shape_guard():
    with pytest.raises(UnsupportedDims):
        ChannelSet(h=np.zeros((2, 3, 3, 2), dtype=complex))


def test_channels_immutable():
    ch = draw_channels(SystemDims(), derive_stream(3, 0))
    with pytest.raises(ValueError):
        ch.h[0, 0, 0, 0] = 0.0


def test_serving_cell_mapping():
    assert [serving_cell(i) for i in range(4)] == [0, 0, 1, 1]
    with pytest.raises(ValueError):
        serving_cell(4)
