"""Two-cell, four-user uplink channel generation.

Users 0 and 1 transmit to base station 0, users 2 and 3 to base station 1.
Indices are 0-based internally; human-facing reports add 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UnsupportedDims
from .numerics import draw_complex_gaussian

N_CELLS = 2
N_USERS = 4

# Draws whose smallest singular value falls below this are resampled: the
# precoder/combiner constructions assume generic full-rank channels.
_MIN_SINGULAR_VALUE = 1e-8


@dataclass(frozen=True)
class SystemDims:
    """Antenna counts for the supported two-cell topology."""

    tx_antennas: int = 2
    rx_antennas: int = 3
    users: int = N_USERS
    cells: int = N_CELLS

    def __post_init__(self) -> None:
        if (self.tx_antennas, self.rx_antennas) != (2, 3):
            raise UnsupportedDims(
                f"only tx_antennas=2, rx_antennas=3 is supported, got "
                f"({self.tx_antennas}, {self.rx_antennas})"
            )
        if self.users != N_USERS or self.cells != N_CELLS:
            raise UnsupportedDims("topology is fixed at 2 cells x 2 users per cell")


@dataclass(frozen=True, eq=False)
class ChannelSet:
    """One realization of all eight rx_antennas x tx_antennas channel matrices.

    `h[j, i]` is the matrix from user i to base station j. Immutable after
    construction; safe to share read-only across concurrent trials.
    """

    h: np.ndarray  # shape (N_CELLS, N_USERS, rx_antennas, tx_antennas)

    def __post_init__(self) -> None:
        if self.h.shape[:2] != (N_CELLS, N_USERS) or self.h.ndim != 4:
            raise UnsupportedDims(f"expected (2, 4, N, M) channel block, got {self.h.shape}")
        self.h.setflags(write=False)


def serving_cell(user: int) -> int:
    """Base-station index that decodes `user` (0-based on both sides)."""
    if user not in (0, 1, 2, 3):
        raise ValueError(f"user index must be in 0..3, got {user}")
    return 0 if user < 2 else 1


def draw_channels(dims: SystemDims, rng: np.random.Generator) -> ChannelSet:
    """Draw the eight independent CN(0,1) channel matrices for one trial.

    Near-singular draws (smallest singular value <= 1e-8) are rejected and
    resampled; generic Gaussian matrices hit this with probability ~0.
    """
    n, m = dims.rx_antennas, dims.tx_antennas
    while True:
        block = draw_complex_gaussian(N_CELLS * N_USERS * n, m, rng)
        h = block.reshape(N_CELLS, N_USERS, n, m)
        sigma = np.linalg.svd(h, compute_uv=False)
        if sigma[..., -1].min() > _MIN_SINGULAR_VALUE:
            return ChannelSet(h=h)
