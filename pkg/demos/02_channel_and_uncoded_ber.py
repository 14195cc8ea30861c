"""
BPSK over AWGN: checking the channel model against the closed form.

Uncoded BPSK has bit error rate Q(sqrt(2 Eb/N0)) = erfc(sqrt(Eb/N0))/2,
so simulating the raw channel is a quick calibration of the noise scaling
before trusting any coded results.
"""

import math

import numpy as np

import polarsim as ps

rng = np.random.default_rng(7)
n_bits = 200_000

print(f"{'Eb/N0 (dB)':>10} {'simulated':>12} {'erfc formula':>12}")
for ebno_db in [0.0, 2.0, 4.0, 6.0]:
    # rate 1.0: every transmitted bit is an information bit
    sigma = ps.ebno_to_sigma(ebno_db, rate=1.0)
    bits = rng.integers(0, 2, n_bits).astype(np.uint8)
    y = ps.awgn(ps.modulate_bpsk(bits), sigma, rng)
    hard = (ps.channel_llr(y, sigma) < 0).astype(np.uint8)
    ber = np.count_nonzero(hard != bits) / n_bits

    ebno_lin = 10 ** (ebno_db / 10)
    theory = 0.5 * math.erfc(math.sqrt(ebno_lin))
    print(f"{ebno_db:>10.1f} {ber:>12.3e} {theory:>12.3e}")

# sigma at 0 dB and rate 1/2 comes out to exactly 1.0
print("\nsigma(0 dB, R=1/2) =", ps.ebno_to_sigma(0.0, 0.5))
