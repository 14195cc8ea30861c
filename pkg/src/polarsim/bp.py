"""Belief propagation over the polar factor graph with early stopping.

The graph has ``n+1`` stages of ``N`` nodes; stage 0 (array row 0) is the
input side carrying the frozen-bit priors, stage ``n`` (row ``n``) faces the
channel.  Between consecutive stages sit ``N/2`` processing elements; at
boundary ``j`` (1-based) element ``p`` joins node pairs ``(i1, i2)`` with
``i1 = (p // 2**(j-1)) * 2**j + p % 2**(j-1)`` and ``i2 = i1 + 2**(j-1)``,
which is exactly the encoder butterfly wiring in natural order.

Messages travel in both directions: ``r_msgs[s, i]`` enters stage ``s`` from
the left, ``l_msgs[s, i]`` from the right.  One iteration is a left-to-right
sweep updating the R messages boundary by boundary, then a right-to-left
sweep updating the L messages.  Every written message is clipped to
``+/- llr_max``, and within one boundary all elements read only pre-update
state, so the sweep is order-independent across elements.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import LLR_MAX
from .polar import CodeConfig, crc_check, extract_message, polar_transform

__all__ = [
    "BpConfig",
    "BpGraph",
    "BpResult",
    "g_fn",
    "pe_endpoints",
    "init_graph",
    "iterate_once",
    "stopping_check",
    "bp_decode",
]


@dataclass(frozen=True)
class BpConfig:
    """Iteration budget, node-update flavour, clip bound and stop rule."""

    i_max: int = 50
    g_mode: str = "exact"
    llr_max: float = LLR_MAX
    stop_mode: str = "reencode"

    def __post_init__(self):
        if self.i_max < 1:
            raise ValueError(f"need at least one iteration, got i_max={self.i_max}")
        if self.g_mode not in ("exact", "min"):
            raise ValueError(f"unknown g mode {self.g_mode!r}")
        if self.llr_max <= 0:
            raise ValueError("clip bound must be positive")
        if self.stop_mode not in ("crc", "reencode", "none"):
            raise ValueError(f"unknown stop mode {self.stop_mode!r}")


@dataclass
class BpGraph:
    """Message state: two dense (n+1, N) arrays, one per direction."""

    l_msgs: np.ndarray
    r_msgs: np.ndarray

    @property
    def n(self) -> int:
        return self.l_msgs.shape[0] - 1

    @property
    def N(self) -> int:
        return self.l_msgs.shape[1]


@dataclass
class BpResult:
    u_hat: np.ndarray
    x_hat: np.ndarray
    soft_u: np.ndarray
    soft_x: np.ndarray
    converged: bool
    iterations_used: int


def g_fn(a, b, mode: str = "exact", llr_max: float = LLR_MAX):
    """Node update ``ln((1 + e^(a+b)) / (e^a + e^b))``, clipped.

    The min mode replaces the exact value by sign(a)sign(b)min(|a|,|b|).
    Operates elementwise on arrays.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if mode == "exact":
        val = np.logaddexp(0.0, a + b) - np.logaddexp(a, b)
    elif mode == "min":
        val = np.sign(a) * np.sign(b) * np.minimum(np.abs(a), np.abs(b))
    else:
        raise ValueError(f"unknown g mode {mode!r}")
    return np.clip(val, -llr_max, llr_max)


def pe_endpoints(j: int, p: int) -> tuple[int, int]:
    """Node pair joined by processing element ``p`` at stage boundary ``j``.

    ``j`` counts boundaries from 1 (input side); boundary ``j`` joins nodes
    ``2**(j-1)`` apart.  Raises for negative arguments; the caller bounds
    ``j <= n`` and ``p < N/2``.
    """
    if j < 1:
        raise ValueError(f"stage boundary starts at 1, got {j}")
    if p < 0:
        raise ValueError(f"element index must be non-negative, got {p}")
    half = 1 << (j - 1)
    block, offset = divmod(p, half)
    i1 = block * 2 * half + offset
    return i1, i1 + half


def init_graph(llrs: np.ndarray, code: CodeConfig, cfg: BpConfig) -> BpGraph:
    """Fresh message state for one frame.

    Channel LLRs (clipped to the message bound) enter on the right; frozen
    positions get a saturated zero-bit prior ``+llr_max`` on the left; every
    other message starts at zero.
    """
    llrs = np.asarray(llrs, dtype=np.float64)
    if llrs.shape != (code.N,):
        raise ValueError(f"expected {code.N} channel LLRs, got shape {llrs.shape}")
    n = code.n
    l_msgs = np.zeros((n + 1, code.N))
    r_msgs = np.zeros((n + 1, code.N))
    l_msgs[n] = np.clip(llrs, -cfg.llr_max, cfg.llr_max)
    r_msgs[0] = cfg.llr_max * code.frozen_mask
    return BpGraph(l_msgs=l_msgs, r_msgs=r_msgs)


def iterate_once(graph: BpGraph, code: CodeConfig, cfg: BpConfig) -> BpGraph:
    """One full iteration: R sweep toward the channel, L sweep back."""
    L = graph.l_msgs
    R = graph.r_msgs
    n = graph.n
    for j in range(1, n + 1):
        half = 1 << (j - 1)
        rl = R[j - 1].reshape(-1, 2, half)
        lr = L[j].reshape(-1, 2, half)
        a, r2 = rl[:, 0], rl[:, 1]
        l1, l2 = lr[:, 0], lr[:, 1]
        out = R[j].reshape(-1, 2, half)
        out[:, 0] = g_fn(a, l2 + r2, cfg.g_mode, cfg.llr_max)
        out[:, 1] = np.clip(g_fn(a, l1, cfg.g_mode, cfg.llr_max) + r2, -cfg.llr_max, cfg.llr_max)
    for j in range(n, 0, -1):
        half = 1 << (j - 1)
        rl = R[j - 1].reshape(-1, 2, half)
        lr = L[j].reshape(-1, 2, half)
        a, r2 = rl[:, 0], rl[:, 1]
        l1, l2 = lr[:, 0], lr[:, 1]
        out = L[j - 1].reshape(-1, 2, half)
        out[:, 0] = g_fn(l1, l2 + r2, cfg.g_mode, cfg.llr_max)
        out[:, 1] = np.clip(g_fn(a, l1, cfg.g_mode, cfg.llr_max) + l2, -cfg.llr_max, cfg.llr_max)
    return graph


def _soft_outputs(graph: BpGraph):
    n = graph.n
    soft_u = graph.l_msgs[0] + graph.r_msgs[0]
    soft_x = graph.l_msgs[n] + graph.r_msgs[n]
    return soft_u, soft_x


def _hard(soft: np.ndarray) -> np.ndarray:
    # Tie at exactly zero decides bit 0.
    return (soft < 0).astype(np.uint8)


def stopping_check(graph: BpGraph, code: CodeConfig, cfg: BpConfig) -> bool:
    """Early-exit test after an L sweep.

    reencode: the hard input decision re-encodes to the hard channel-side
    decision.  crc: the message bits of the hard input decision pass the
    configured CRC.  none: never stop early.
    """
    if cfg.stop_mode == "none":
        return False
    soft_u, soft_x = _soft_outputs(graph)
    u_hat = _hard(soft_u)
    if cfg.stop_mode == "reencode":
        return bool(np.array_equal(polar_transform(u_hat), _hard(soft_x)))
    if code.crc is None:
        raise ValueError("crc stop mode needs a code with a CRC")
    return crc_check(extract_message(u_hat, code), code.crc)


def bp_decode(llrs: np.ndarray, code: CodeConfig, cfg: BpConfig | None = None) -> BpResult:
    """Iterate until the stop rule fires or the iteration budget runs out."""
    if cfg is None:
        cfg = BpConfig()
    if code.N < 2:
        raise ValueError("decoding needs a block length of at least 2")
    graph = init_graph(llrs, code, cfg)
    converged = False
    iterations_used = cfg.i_max
    for it in range(1, cfg.i_max + 1):
        iterate_once(graph, code, cfg)
        if stopping_check(graph, code, cfg):
            converged = True
            iterations_used = it
            break
    soft_u, soft_x = _soft_outputs(graph)
    return BpResult(
        u_hat=_hard(soft_u),
        x_hat=_hard(soft_x),
        soft_u=soft_u,
        soft_x=soft_x,
        converged=converged,
        iterations_used=iterations_used,
    )
