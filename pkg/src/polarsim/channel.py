"""BPSK modulation, AWGN, and LLR computation for the simulation chain.

All randomness flows through numpy ``Generator`` objects.  The Monte Carlo
harness derives one generator per frame from ``(master_seed, point_index,
frame_index)`` so that any frame can be reproduced in isolation and frames
can be decoded in any order without changing the noise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "LLR_MAX",
    "RNG_NAME",
    "ChannelParams",
    "ebno_to_sigma",
    "modulate_bpsk",
    "awgn",
    "channel_llr",
    "frame_rng",
]

# Saturation magnitude for noiseless LLRs; also the default clip bound used by
# the message-passing decoder.
LLR_MAX = 20.0

# Recorded in CSV metadata so result files name their noise source.
RNG_NAME = "numpy-pcg64/SeedSequence(master_seed, spawn_key=(point, frame))"


def ebno_to_sigma(ebno_db: float, rate: float) -> float:
    """Noise standard deviation for unit-energy BPSK at a given Eb/N0.

    ``sigma**2 = 1 / (2 * rate * 10**(ebno_db / 10))``.
    """
    if not (0.0 < rate <= 1.0):
        raise ValueError(f"rate must lie in (0, 1], got {rate}")
    ebno_lin = 10.0 ** (ebno_db / 10.0)
    return float(np.sqrt(1.0 / (2.0 * rate * ebno_lin)))


@dataclass(frozen=True)
class ChannelParams:
    """Operating point of the AWGN channel.

    ``rate_for_sigma`` is the code rate used in the Eb/N0 to sigma
    conversion; pass 1.0 for uncoded transmission.
    """

    ebno_db: float
    rate_for_sigma: float = 1.0

    @property
    def sigma(self) -> float:
        return ebno_to_sigma(self.ebno_db, self.rate_for_sigma)


def modulate_bpsk(bits: np.ndarray) -> np.ndarray:
    """Map bits to unit-energy symbols: 0 -> +1, 1 -> -1."""
    return 1.0 - 2.0 * np.asarray(bits, dtype=np.float64)


def awgn(symbols: np.ndarray, sigma: float, rng: np.random.Generator) -> np.ndarray:
    """Add white Gaussian noise of standard deviation ``sigma``."""
    if sigma < 0:
        raise ValueError(f"sigma must be non-negative, got {sigma}")
    symbols = np.asarray(symbols, dtype=np.float64)
    if sigma == 0.0:
        return symbols.copy()
    return symbols + sigma * rng.standard_normal(symbols.shape)


def channel_llr(received: np.ndarray, sigma: float) -> np.ndarray:
    """Channel LLRs ``2 y / sigma^2``; positive favours bit 0.

    A zero sigma (noiseless operation) yields saturated values at
    ``+/- LLR_MAX`` instead of infinities.
    """
    received = np.asarray(received, dtype=np.float64)
    if sigma < 0:
        raise ValueError(f"sigma must be non-negative, got {sigma}")
    if sigma == 0.0:
        return LLR_MAX * np.sign(received)
    return 2.0 * received / (sigma * sigma)


def frame_rng(master_seed: int, point_index: int, frame_index: int) -> np.random.Generator:
    """Generator for one frame of one sweep point.

    Keyed so that adding further sweep points or frames never perturbs the
    noise of existing ones.
    """
    seq = np.random.SeedSequence(master_seed, spawn_key=(point_index, frame_index))
    return np.random.default_rng(seq)
