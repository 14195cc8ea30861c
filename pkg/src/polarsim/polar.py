"""Polar code fundamentals: transform, code construction, CRC, bit placement.

Bit vectors are plain numpy arrays of dtype ``uint8`` holding 0/1 values.
Codes are described by a :class:`CodeConfig`, which couples the block length
``N``, the number of non-frozen positions ``k`` (information plus optional CRC
bits), the frozen-position mask and an optional :class:`CrcSpec`.

The encoder works in natural bit order: position ``i`` of the input maps to
position ``i`` of the transform graph, with no bit-reversal permutation at
either end.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = [
    "CrcSpec",
    "CodeConfig",
    "polar_transform",
    "bhattacharyya_profile",
    "construct_frozen_mask",
    "crc_compute",
    "crc_check",
    "crc_check_rows",
    "insert_message",
    "extract_message",
    "load_frozen_mask",
    "save_frozen_mask",
]

# Standard generator polynomials (mask only, the leading x^c term is implicit).
CRC_POLYS = {
    8: 0x07,        # x^8 + x^2 + x + 1
    16: 0x1021,     # CCITT: x^16 + x^12 + x^5 + 1
    24: 0x864CFB,   # x^24 + x^23 + x^18 + ... + 1 (LTE CRC24A)
}


def _require_power_of_two(N: int) -> int:
    if N <= 0 or (N & (N - 1)) != 0:
        raise ValueError(f"block length must be a positive power of two, got {N}")
    return int(N).bit_length() - 1


@dataclass(frozen=True)
class CrcSpec:
    """CRC description: register width in bits, generator polynomial, seed.

    ``poly`` carries the low ``width`` coefficients of the generator; the
    leading term is implicit.  The register is clocked MSB-first with no
    final XOR and no reflection.
    """

    width: int
    poly: int
    init: int = 0

    def __post_init__(self):
        if self.width not in (8, 16, 24):
            raise ValueError(f"unsupported CRC width {self.width}, expected 8, 16 or 24")
        if not (0 < self.poly < (1 << self.width)):
            raise ValueError("CRC polynomial out of range for the given width")
        if not (0 <= self.init < (1 << self.width)):
            raise ValueError("CRC initial value out of range for the given width")

    @classmethod
    def standard(cls, width: int) -> "CrcSpec":
        """Return the default polynomial for a supported width (seed 0)."""
        if width not in CRC_POLYS:
            raise ValueError(f"no default polynomial for CRC width {width}")
        return cls(width=width, poly=CRC_POLYS[width])


def polar_transform(u: np.ndarray) -> np.ndarray:
    """Apply the polar transform (XOR butterfly) to a bit vector.

    The first stage combines adjacent positions, the last stage combines
    positions half the block apart, matching the encoder graph in natural
    order.  The transform is its own inverse.

    Parameters
    ----------
    u : array of 0/1, length a power of two

    Returns
    -------
    uint8 array of the same length
    """
    u = np.asarray(u)
    N = u.size
    _require_power_of_two(N)
    x = u.astype(np.uint8).copy()
    h = 1
    while h < N:
        pairs = x.reshape(-1, 2, h)
        pairs[:, 0, :] ^= pairs[:, 1, :]
        h *= 2
    return x


def bhattacharyya_profile(N: int, design_param: float = 0.5) -> np.ndarray:
    """Per-position erasure bounds from the BEC doubling recursion.

    Starting from a single value ``design_param``, each doubling maps a
    parent value ``z`` to the pair ``(2z - z^2, z^2)``, the first child being
    the degraded one.  Position ``i`` of the result bounds the reliability of
    input position ``i``; larger means less reliable.
    """
    if not (0.0 < design_param < 1.0):
        raise ValueError(f"design parameter must lie in (0, 1), got {design_param}")
    n = _require_power_of_two(N)
    z = np.array([design_param], dtype=np.float64)
    for _ in range(n):
        nxt = np.empty(2 * z.size, dtype=np.float64)
        nxt[0::2] = 2.0 * z - z * z
        nxt[1::2] = z * z
        z = nxt
    return z


def construct_frozen_mask(N: int, k: int, design_param: float = 0.5) -> np.ndarray:
    """Choose the N - k least reliable positions as frozen.

    Reliability is ranked by :func:`bhattacharyya_profile`; ties freeze the
    lower index first, so the construction is deterministic and the frozen
    sets for decreasing ``k`` are nested.

    Returns
    -------
    uint8 mask of length N, 1 marking a frozen position
    """
    if not (0 < k <= N):
        raise ValueError(f"need 0 < k <= N, got k={k}, N={N}")
    z = bhattacharyya_profile(N, design_param)
    # Stable argsort on -z: equal z values keep ascending index order.
    order = np.argsort(-z, kind="stable")
    mask = np.zeros(N, dtype=np.uint8)
    mask[order[: N - k]] = 1
    return mask


def _crc_register(bits, spec: CrcSpec) -> int:
    """Run the MSB-first CRC shift register over a bit sequence."""
    reg = spec.init
    top_shift = spec.width - 1
    mask = (1 << spec.width) - 1
    poly = spec.poly
    for b in bits:
        feedback = ((reg >> top_shift) & 1) ^ int(b)
        reg = (reg << 1) & mask
        if feedback:
            reg ^= poly
    return reg


def crc_compute(message: np.ndarray, spec: CrcSpec) -> np.ndarray:
    """Remainder bits for a message, MSB first.

    Appending the returned bits to the message yields a sequence that
    :func:`crc_check` accepts.
    """
    reg = _crc_register(np.asarray(message), spec)
    out = np.empty(spec.width, dtype=np.uint8)
    for i in range(spec.width):
        out[i] = (reg >> (spec.width - 1 - i)) & 1
    return out


def crc_check(data: np.ndarray, spec: CrcSpec) -> bool:
    """True iff ``data`` (message followed by its CRC bits) is consistent."""
    data = np.asarray(data)
    if data.size < spec.width:
        raise ValueError("data shorter than the CRC itself")
    return _crc_register(data, spec) == 0


@functools.lru_cache(maxsize=None)
def _syndrome_matrix(length: int, spec: CrcSpec):
    """GF(2) map equivalent to running the register over ``length`` bits.

    The register is affine in the data: precompute the response to each unit
    vector plus the all-zero offset, so many candidate sequences can be
    checked with one matrix product.
    """
    zero = np.zeros(length, dtype=np.uint8)
    offset = _crc_register(zero, spec)
    cols = np.empty((spec.width, length), dtype=np.uint8)
    for j in range(length):
        zero[j] = 1
        reg = _crc_register(zero, spec) ^ offset
        zero[j] = 0
        for i in range(spec.width):
            cols[i, j] = (reg >> (spec.width - 1 - i)) & 1
    off_bits = np.array(
        [(offset >> (spec.width - 1 - i)) & 1 for i in range(spec.width)], dtype=np.uint8
    )
    return cols, off_bits


def crc_check_rows(data_rows: np.ndarray, spec: CrcSpec) -> np.ndarray:
    """Vectorised :func:`crc_check` over the rows of a 2-D bit array."""
    data_rows = np.atleast_2d(np.asarray(data_rows, dtype=np.uint8))
    if data_rows.shape[1] < spec.width:
        raise ValueError("data shorter than the CRC itself")
    cols, off = _syndrome_matrix(data_rows.shape[1], spec)
    syndrome = (data_rows @ cols.T) & 1
    syndrome ^= off
    return ~syndrome.any(axis=1)


class CodeConfig:
    """A polar code: block length, non-frozen positions and optional CRC.

    Parameters
    ----------
    N : int
        Block length, a power of two.
    k : int
        Number of non-frozen positions (information bits plus CRC bits).
    frozen_mask : array of uint8, optional
        Explicit frozen mask (1 = frozen).  Built from the Bhattacharyya
        ranking when omitted.
    crc : CrcSpec or int or None
        CRC appended to the message inside the non-frozen positions.  An
        integer selects the standard polynomial of that width.
    design_param : float
        Erasure probability seed for the construction ranking.
    """

    def __init__(self, N, k, frozen_mask=None, crc=None, design_param=0.5):
        self.n = _require_power_of_two(N)
        self.N = int(N)
        self.k = int(k)
        if not (0 < self.k <= self.N):
            raise ValueError(f"need 0 < k <= N, got k={k}, N={N}")
        if isinstance(crc, int):
            crc = CrcSpec.standard(crc)
        self.crc = crc
        if crc is not None and crc.width >= self.k:
            raise ValueError(
                f"CRC width {crc.width} does not leave room for message bits (k={k})"
            )
        self.design_param = float(design_param)
        self.bhattacharyya = bhattacharyya_profile(self.N, self.design_param)
        if frozen_mask is None:
            frozen_mask = construct_frozen_mask(self.N, self.k, self.design_param)
        frozen_mask = np.asarray(frozen_mask, dtype=np.uint8)
        if frozen_mask.shape != (self.N,):
            raise ValueError(f"frozen mask must have length N={N}")
        if not np.isin(frozen_mask, (0, 1)).all():
            raise ValueError("frozen mask entries must be 0 or 1")
        n_frozen = int(frozen_mask.sum())
        if n_frozen != self.N - self.k:
            raise ValueError(
                f"frozen mask freezes {n_frozen} positions, expected N-k={self.N - self.k}"
            )
        self.frozen_mask = frozen_mask
        self.info_positions = np.flatnonzero(frozen_mask == 0)

    @property
    def crc_width(self) -> int:
        return self.crc.width if self.crc is not None else 0

    @property
    def message_len(self) -> int:
        """Number of payload bits per frame (CRC excluded)."""
        return self.k - self.crc_width

    @property
    def rate(self) -> float:
        """Transmitted rate k/N counting CRC bits as payload."""
        return self.k / self.N

    @property
    def message_rate(self) -> float:
        """Effective information rate (k - crc_width)/N."""
        return self.message_len / self.N

    def __repr__(self):
        crc = f", crc={self.crc.width}" if self.crc is not None else ""
        return f"CodeConfig(N={self.N}, k={self.k}{crc})"


def insert_message(message: np.ndarray, cfg: CodeConfig) -> np.ndarray:
    """Place a message (plus CRC when configured) into the encoder input.

    Frozen positions are set to zero; the message bits, followed by the CRC
    remainder, fill the non-frozen positions in ascending index order.
    """
    message = np.asarray(message, dtype=np.uint8)
    if message.size != cfg.message_len:
        raise ValueError(
            f"message has {message.size} bits, config expects {cfg.message_len}"
        )
    if cfg.crc is not None:
        data = np.concatenate([message, crc_compute(message, cfg.crc)])
    else:
        data = message
    u = np.zeros(cfg.N, dtype=np.uint8)
    u[cfg.info_positions] = data
    return u


def extract_message(u_hat: np.ndarray, cfg: CodeConfig) -> np.ndarray:
    """Read the k non-frozen bits (message plus CRC) back out of a decision."""
    u_hat = np.asarray(u_hat)
    if u_hat.size != cfg.N:
        raise ValueError(f"decision vector has {u_hat.size} bits, expected N={cfg.N}")
    return u_hat[cfg.info_positions].astype(np.uint8)


def save_frozen_mask(mask: np.ndarray, path) -> None:
    """Write a frozen mask as a single line of '0'/'1' characters."""
    mask = np.asarray(mask, dtype=np.uint8)
    Path(path).write_text("".join("1" if b else "0" for b in mask) + "\n")


def load_frozen_mask(path) -> np.ndarray:
    """Read a frozen mask written by :func:`save_frozen_mask` (1 = frozen)."""
    text = Path(path).read_text().strip()
    if not text or set(text) - {"0", "1"}:
        raise ValueError(f"frozen mask file {path!r} must hold only '0'/'1' characters")
    return np.frombuffer(text.encode("ascii"), dtype=np.uint8) - ord("0")
