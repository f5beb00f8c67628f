#!/usr/bin/env python3
"""How fast does random-codebook quantization error shrink with codebook size?

For unit vectors in C^2 the mean squared chordal error of a 2^B-word random
codebook is bounded by 2^-B; the empirical mean actually sits at
1/(2^B + 1), slightly below the bound. This script prints both.
"""

import numpy as np

from iamac import derive_stream, draw_complex_gaussian, generate_rvq_codebook, quantize, unit_normalize

TRIALS = 4000
SEED = 31

print(f"mean squared chordal error over {TRIALS} random unit targets in C^2\n")
print("  bits   codewords   empirical      1/(2^B+1)      2^-B bound")
for bits in range(0, 13, 2):
    sin2 = np.empty(TRIALS)
    for t in range(TRIALS):
        rng = derive_stream(SEED, bits, t)
        v = unit_normalize(draw_complex_gaussian(1, 2, rng)[0])
        sin2[t] = quantize(v, generate_rvq_codebook(bits, 2, rng)).sin2
    q = 2 ** bits
    print(f"  {bits:4d}   {q:9d}   {sin2.mean():.6f}     {1.0/(q+1):.6f}       {2.0**-bits:.6f}")

print("\nEvery doubling of the codebook halves the error: to ride a growing")
print("SNR with a fixed rate penalty, the bit budget must grow like log2(SNR).")
