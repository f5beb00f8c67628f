"""Small dense complex linear-algebra kernels used by every other module.

Vectors are 1-D complex ndarrays and matrices are 2-D; all computation is
done in double precision because downstream residual checks sit at 1e-10.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch, ZeroVector

# Norms below this are treated as exactly zero when normalizing.
_ZERO_NORM_FLOOR = 1e-300


def derive_stream(master_seed: int, *path: int) -> np.random.Generator:
    """Deterministic child generator for the integer path (master_seed, *path).

    Streams with distinct paths are statistically independent, so trial t
    can use (master_seed, t, purpose) without any coordination between
    trials and the result does not depend on execution order.
    """
    entropy = [int(master_seed) & 0xFFFFFFFFFFFFFFFF]
    entropy.extend(int(p) for p in path)
    return np.random.default_rng(np.random.SeedSequence(entropy))


def draw_complex_gaussian(rows: int, cols: int, rng: np.random.Generator) -> np.ndarray:
    """Draw a rows x cols matrix of i.i.d. circularly-symmetric CN(0, 1) entries.

    Real and imaginary parts are independent N(0, 1/2), so each entry has
    unit mean squared magnitude.
    """
    if rows < 1 or cols < 1:
        raise DimensionMismatch(f"matrix dimensions must be positive, got {rows}x{cols}")
    buf = rng.standard_normal((rows, 2 * cols))
    z = buf.view(complex)
    z *= np.sqrt(0.5)
    return z


def null_space(a: np.ndarray) -> list[np.ndarray]:
    """Orthonormal basis of the kernel of `a`, as a list of 1-D vectors.

    A singular value counts as zero iff it is <= max(rows, cols) * eps *
    sigma_max (the usual numerical-rank convention), so the basis size is
    cols - rank(a). An empty list means `a` has full column rank.
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2:
        raise DimensionMismatch(f"expected a 2-D matrix, got ndim={a.ndim}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ValueError("matrix contains non-finite entries")
    _, s, vh = np.linalg.svd(a)
    tol = max(a.shape) * np.finfo(float).eps * (s[0] if s.size else 0.0)
    rank = int(np.sum(s > tol))
    # Rows rank..cols of vh conjugated are the right singular vectors of the
    # (numerically) zero singular values; they are orthonormal by construction.
    return [vh[i].conj() for i in range(rank, a.shape[1])]


def unit_normalize(v: np.ndarray) -> np.ndarray:
    """Scale `v` to unit Euclidean norm."""
    v = np.asarray(v, dtype=complex)
    n = np.linalg.norm(v)
    if n <= _ZERO_NORM_FLOOR:
        raise ZeroVector("cannot normalize a zero vector")
    return v / n


def coherence(u: np.ndarray, v: np.ndarray) -> float:
    """|u^H v| for two unit vectors: 1 for parallel directions, 0 for orthogonal.

    Invariant under multiplying either argument by a unit-modulus phase.
    """
    u = np.asarray(u)
    v = np.asarray(v)
    if u.shape != v.shape:
        raise DimensionMismatch(f"shape mismatch: {u.shape} vs {v.shape}")
    return float(np.abs(np.vdot(u, v)))
