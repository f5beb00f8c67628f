"""Random-codebook quantization of unit transmit vectors.

A codebook of 2**B independent isotropic unit vectors represents each
precoder by the codeword with the largest coherence |c^H v|; the residual
squared chordal error sin^2(theta) = 1 - |c^H v|^2 is what limited feedback
costs downstream.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateDecomposition, DimensionMismatch, TooManyBits
from .numerics import coherence, draw_complex_gaussian, unit_normalize

MAX_BITS = 24  # linear codeword scan; 2**24 is the resource guard


@dataclass(frozen=True, eq=False)
class Codebook:
    bits: int
    dim: int
    codewords: np.ndarray  # (2**bits, dim), unit rows

    def __post_init__(self) -> None:
        if self.codewords.shape != (2 ** self.bits, self.dim):
            raise DimensionMismatch(
                f"codebook shape {self.codewords.shape} does not match "
                f"2**{self.bits} x {self.dim}"
            )
        self.codewords.setflags(write=False)


@dataclass(frozen=True, eq=False)
class QuantizationResult:
    index: int
    v_hat: np.ndarray
    cos2: float  # squared coherence between target and chosen codeword
    sin2: float  # squared chordal error, 1 - cos2


@dataclass(frozen=True, eq=False)
class Decomposition:
    """Split of a quantized vector into its component along the original
    vector (cos_theta) and along a unit error direction orthogonal to it
    (sin_theta)."""

    cos_theta: float
    sin_theta: float
    error_dir: np.ndarray


def generate_rvq_codebook(bits: int, dim: int, rng: np.random.Generator) -> Codebook:
    """Draw 2**bits independent isotropic unit vectors (normalized CN(0,1))."""
    if bits > MAX_BITS:
        raise TooManyBits(f"bits must be at most {MAX_BITS}, got {bits}")
    if bits < 0:
        raise ValueError(f"bits must be non-negative, got {bits}")
    if dim < 2:
        raise DimensionMismatch(f"codeword dimension must be >= 2, got {dim}")
    # The CN(0,1) scale cancels under normalization, so draw raw normals and
    # divide by row norms in place; 2**bits can reach millions of rows.
    buf = rng.standard_normal((2 ** bits, 2 * dim))
    norms = np.sqrt(np.einsum("ij,ij->i", buf, buf))
    codewords = buf.view(complex)
    codewords /= norms[:, np.newaxis]
    return Codebook(bits=bits, dim=dim, codewords=codewords)


def quantize(v: np.ndarray, cb: Codebook) -> QuantizationResult:
    """Pick the codeword with maximal coherence to `v` (lowest index on ties)."""
    v = np.asarray(v)
    if v.shape != (cb.dim,):
        raise DimensionMismatch(f"vector shape {v.shape} vs codebook dim {cb.dim}")
    # |c^H v| = |c . conj(v)|: conjugating v avoids copying the codebook.
    scores = np.abs(cb.codewords @ v.conj())
    index = int(np.argmax(scores))
    cos2 = min(float(scores[index]) ** 2, 1.0)
    return QuantizationResult(
        index=index,
        v_hat=cb.codewords[index],
        cos2=cos2,
        sin2=max(1.0 - cos2, 0.0),
    )


def decompose(v: np.ndarray, v_hat: np.ndarray) -> Decomposition:
    """Split `v_hat` into components along `v` and along a unit error direction.

    With e = unit(v_hat - v (v^H v_hat)) the reconstruction
    v (v^H v_hat) + e (e^H v_hat) reproduces v_hat exactly; cos_theta and
    sin_theta are the magnitudes of the two projection coefficients.
    """
    v = np.asarray(v)
    v_hat = np.asarray(v_hat)
    if v.shape != v_hat.shape:
        raise DimensionMismatch(f"shape mismatch: {v.shape} vs {v_hat.shape}")
    cos_theta = min(coherence(v, v_hat), 1.0)
    sin_theta = np.sqrt(max(1.0 - cos_theta ** 2, 0.0))
    if sin_theta <= 1e-12:
        raise DegenerateDecomposition(
            "vectors coincide up to phase; treat the error component as zero"
        )
    residual = v_hat - v * np.vdot(v, v_hat)
    return Decomposition(
        cos_theta=cos_theta,
        sin_theta=sin_theta,
        error_dir=unit_normalize(residual),
    )
