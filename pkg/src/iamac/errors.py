"""Exception types shared across the simulator modules."""


class DimensionMismatch(ValueError):
    """Vector/matrix shapes are inconsistent for the requested operation."""


class ZeroVector(ValueError):
    """A vector with numerically zero norm cannot be normalized."""


class UnsupportedDims(ValueError):
    """Antenna configuration outside the supported 2-tx / 3-rx setup."""


class AlignmentInfeasible(RuntimeError):
    """The stacked two-channel system has an empty null space."""


class TooManyBits(ValueError):
    """Requested codebook size 2**B exceeds the resource guard."""


class DegenerateDecomposition(ValueError):
    """Vectors coincide up to phase, so the error direction is undefined."""


class InvalidTau(ValueError):
    """Rate-loss budget factor tau must be strictly greater than 1."""


class DegenerateGrid(ValueError):
    """Slope estimation needs at least two distinct SNR values."""
