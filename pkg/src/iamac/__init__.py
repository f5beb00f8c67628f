"""Interference-aligned uplink precoding with quantized beamformer feedback
on a two-cell, two-user-per-cell MIMO multiple-access channel.

The package is organized bottom-up: `numerics` (complex linear algebra and
seeded streams), `channel` (Gaussian channel draws), `alignment` (precoder
and combiner design), `quantization` (random codebooks), `rates` (Shannon
rates, the rate-loss bound, the bit scaling law), `experiments` (Monte Carlo
sweeps and statistical verification), and `cli` (the `iamac` command).
"""

from .alignment import CombinerSet, PrecoderSet, align_pair, design_network, zf_combiner
from .channel import ChannelSet, SystemDims, draw_channels, serving_cell
from .experiments import (
    DEFAULT_SEED,
    FixedBits,
    ScaledBits,
    SimConfig,
    SweepRow,
    VerificationReport,
    estimate_interference_gains,
    run_sweep,
    run_trial,
    run_verification_suite,
    verify_interference_gains,
    verify_isotropy,
    verify_multiplexing_gain,
    verify_quantization_bound,
    verify_rate_loss_theorem,
)
from .numerics import coherence, derive_stream, draw_complex_gaussian, null_space, unit_normalize
from .quantization import (
    Codebook,
    Decomposition,
    QuantizationResult,
    decompose,
    generate_rvq_codebook,
    quantize,
)
from .rates import (
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

__version__ = "0.1.0"
