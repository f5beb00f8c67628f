"""Interference-aligned transmit precoders and zero-forcing receive combiners.

Each base station designs the transmit directions of the *other* cell's two
users so that their interference arrives along one shared receive direction.
With 3 receive antennas that leaves two clean dimensions per base station:
a unit combiner orthogonal to both the aligned out-of-cell direction and the
in-cell co-user's signal then decodes each served user interference-free.

The aligned directions come from the kernel of the 3 x 4 concatenation
[H_a | -H_b]: a kernel vector stacked as (x_a, x_b) satisfies
H_a x_a = H_b x_b, i.e. both users' signals land on the same receive ray.
For generic full-rank channels that kernel has dimension exactly one.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import ChannelSet
from .errors import AlignmentInfeasible, ZeroVector
from .numerics import null_space, unit_normalize

_STACK_HALF_FLOOR = 1e-10


@dataclass(frozen=True, eq=False)
class PrecoderSet:
    """Unit transmit vectors per user plus the aligned interference ray per cell."""

    v: np.ndarray      # (4, tx_antennas), unit rows
    h_ici: np.ndarray  # (2, rx_antennas), unit rows

    def __post_init__(self) -> None:
        self.v.setflags(write=False)
        self.h_ici.setflags(write=False)


@dataclass(frozen=True, eq=False)
class CombinerSet:
    """Unit receive combiners, one per user, held by the serving base station."""

    w: np.ndarray  # (4, rx_antennas), unit rows

    def __post_init__(self) -> None:
        self.w.setflags(write=False)


def _fix_phase(v: np.ndarray) -> np.ndarray:
    """Rotate `v` so its first non-negligible component is real and positive.

    Removes the arbitrary global phase of SVD-derived kernel vectors, making
    combiner outputs deterministic.
    """
    idx = int(np.argmax(np.abs(v) > 1e-12))
    pivot = v[idx]
    return v * (pivot.conjugate() / abs(pivot))


def align_pair(
    h_a: np.ndarray, h_b: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Design unit precoders (v_a, v_b) whose receive images share one direction.

    Returns (v_a, v_b, shared_dir) where shared_dir is the unit vector along
    h_a @ v_a; by construction h_b @ v_b lies on the same ray.
    """
    h_a = np.asarray(h_a, dtype=complex)
    h_b = np.asarray(h_b, dtype=complex)
    m = h_a.shape[1]
    kernel = null_space(np.hstack([h_a, -h_b]))
    if not kernel:
        raise AlignmentInfeasible("stacked channel matrix has full column rank")
    stacked = kernel[0]
    half_a, half_b = stacked[:m], stacked[m:]
    if np.linalg.norm(half_a) <= _STACK_HALF_FLOOR or np.linalg.norm(half_b) <= _STACK_HALF_FLOOR:
        raise ZeroVector("kernel vector has a vanishing half; resample the channel")
    v_a = unit_normalize(half_a)
    v_b = unit_normalize(half_b)
    shared_dir = unit_normalize(h_a @ v_a)
    return v_a, v_b, shared_dir


def zf_combiner(b1: np.ndarray, b2: np.ndarray) -> np.ndarray:
    """Unit vector w with w^H b1 = w^H b2 = 0.

    If b1 and b2 are parallel the null space has dimension two; the first
    orthonormal basis vector is returned, phase-fixed for determinism.
    """
    rows = np.vstack([np.conj(b1), np.conj(b2)])
    basis = null_space(rows)
    return _fix_phase(basis[0])


def design_network(ch: ChannelSet) -> tuple[PrecoderSet, CombinerSet]:
    """Full precoder/combiner design for one channel realization.

    Base station 0 aligns the interference of users 2 and 3; base station 1
    aligns users 0 and 1. Each user's combiner nulls the co-user's signal at
    the serving base station together with the aligned out-of-cell ray.
    """
    h = ch.h
    v = np.empty((4, h.shape[3]), dtype=complex)
    h_ici = np.empty((2, h.shape[2]), dtype=complex)

    v[2], v[3], h_ici[0] = align_pair(h[0, 2], h[0, 3])
    v[0], v[1], h_ici[1] = align_pair(h[1, 0], h[1, 1])

    w = np.empty((4, h.shape[2]), dtype=complex)
    w[0] = zf_combiner(h[0, 1] @ v[1], h_ici[0])
    w[1] = zf_combiner(h[0, 0] @ v[0], h_ici[0])
    w[2] = zf_combiner(h[1, 3] @ v[3], h_ici[1])
    w[3] = zf_combiner(h[1, 2] @ v[2], h_ici[1])

    return PrecoderSet(v=v, h_ici=h_ici), CombinerSet(w=w)
