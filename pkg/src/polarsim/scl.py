"""Successive-cancellation list decoding with sorter-based survivor selection.

Path metrics live in the LLR domain: deciding bit ``u`` against soft value
``lam`` costs ``ln(1 + exp(-(1-2u) lam))`` (or ``|lam|`` on disagreement in
the approximate mode), so smaller is better and metrics never decrease.

Survivor selection out of the ``2L`` branch candidates is done either by a
full bitonic sorting network or by the cheaper pairwise-ranking scheme
(``pseudo_sort_select``); both keep exactly the ``min(L, #candidates)`` best
under the order (metric, candidate index) and therefore always agree.

Positions whose construction reliability passes ``da_threshold`` can be
marked decision-aided: every path follows its own hard decision there and no
branching or sorting takes place, trading list diversity for speed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .polar import CodeConfig, crc_check_rows

__all__ = [
    "SclConfig",
    "SclResult",
    "sc_f",
    "sc_g",
    "path_metric_update",
    "pseudo_sort_select",
    "bitonic_sort_select",
    "decision_aided_mask",
    "scl_decode",
]


@dataclass(frozen=True)
class SclConfig:
    """Knobs of the list decoder.

    metric_mode : "exact" or "approx" path metric increments
    f_mode      : "minsum" (default) or "exact" box-plus check updates
    selector    : "pseudo" pairwise ranking or "bitonic" full network
    da_threshold: reliability bound below which positions are decision-aided;
                  0 disables the feature
    """

    list_size: int = 8
    metric_mode: str = "exact"
    f_mode: str = "minsum"
    selector: str = "pseudo"
    da_threshold: float = 0.0

    def __post_init__(self):
        if self.list_size < 1:
            raise ValueError(f"list size must be at least 1, got {self.list_size}")
        if self.metric_mode not in ("exact", "approx"):
            raise ValueError(f"unknown metric mode {self.metric_mode!r}")
        if self.f_mode not in ("minsum", "exact"):
            raise ValueError(f"unknown check-node mode {self.f_mode!r}")
        if self.selector not in ("pseudo", "bitonic"):
            raise ValueError(f"unknown selector {self.selector!r}")
        if not (0.0 <= self.da_threshold <= 1.0):
            raise ValueError("decision-aid threshold must lie in [0, 1]")


@dataclass
class SclResult:
    """Outcome of one list decode.

    ``u_hat`` is the winning path's full decision vector.  ``selected_by_crc``
    tells whether the winner was picked among CRC-passing paths (always False
    when the code carries no CRC); ``crc_ok`` is the winner's own CRC verdict.
    """

    u_hat: np.ndarray
    metric: float
    crc_ok: bool
    selected_by_crc: bool


def sc_f(a: float, b: float, exact: bool = False) -> float:
    """Check-node combination of two soft values (min-sum unless ``exact``)."""
    if exact:
        return float(_kernels.f_boxplus(a, b))
    return float(_kernels.f_minsum(a, b))


def sc_g(a: float, b: float, u: int) -> float:
    """Variable-node combination ``b + (1 - 2u) a``."""
    return float(_kernels.g_update(a, b, int(u)))


def path_metric_update(metric: float, llr: float, u: int, mode: str = "exact") -> float:
    """Metric after deciding bit ``u`` at soft value ``llr``; never decreases."""
    if mode not in ("exact", "approx"):
        raise ValueError(f"unknown metric mode {mode!r}")
    return metric + float(_kernels.metric_increment(llr, int(u), mode == "exact"))


def pseudo_sort_select(metrics: np.ndarray, L: int) -> np.ndarray:
    """Survivor indices via pairwise ranking, best metric first.

    Every entry is compared against every other; an entry survives when at
    most ``L`` entries rank at or below it (ties resolved toward the lower
    index).  Infinite metrics mark inactive slots and never survive.
    """
    metrics = np.ascontiguousarray(metrics, dtype=np.float64)
    if L < 1:
        raise ValueError("need L >= 1")
    d = _kernels.pseudo_rank(metrics)
    keep = (d <= L) & np.isfinite(metrics)
    order = np.argsort(d[keep], kind="stable")
    return np.flatnonzero(keep)[order]


def bitonic_sort_select(metrics: np.ndarray, L: int) -> np.ndarray:
    """Survivor indices via a bitonic sorting network, best metric first.

    The input is padded with infinities up to a power of two, sorted on the
    pair (metric, index), and the first ``L`` finite entries survive.
    """
    metrics = np.asarray(metrics, dtype=np.float64)
    if L < 1:
        raise ValueError("need L >= 1")
    m2 = 1
    while m2 < max(metrics.size, 2):
        m2 <<= 1
    keys = np.full(m2, np.inf)
    keys[: metrics.size] = metrics
    idx = np.arange(m2, dtype=np.int64)
    _kernels.bitonic_sort_pairs(keys, idx)
    head = idx[:L][np.isfinite(keys[:L])]
    return head.copy()


def decision_aided_mask(code: CodeConfig, threshold: float) -> np.ndarray:
    """Mask of non-frozen positions reliable enough to skip branching.

    A position qualifies when its construction-time Bhattacharyya value lies
    strictly below ``threshold``.
    """
    if not (0.0 <= threshold <= 1.0):
        raise ValueError("decision-aid threshold must lie in [0, 1]")
    mask = (code.bhattacharyya < threshold) & (code.frozen_mask == 0)
    return mask.astype(np.uint8)


def scl_decode(llrs: np.ndarray, code: CodeConfig, cfg: SclConfig | None = None) -> SclResult:
    """List-decode one frame of channel LLRs.

    The winner is the CRC-passing path of least metric when the code has a
    CRC and any path passes; otherwise the least-metric path overall.
    """
    if cfg is None:
        cfg = SclConfig()
    llrs = np.ascontiguousarray(llrs, dtype=np.float64)
    if llrs.shape != (code.N,):
        raise ValueError(f"expected {code.N} channel LLRs, got shape {llrs.shape}")
    if code.N < 2:
        raise ValueError("list decoding needs a block length of at least 2")
    if not np.isfinite(llrs).all():
        raise ValueError("channel LLRs must be finite")

    da = decision_aided_mask(code, cfg.da_threshold)
    u_paths, metrics, count = _kernels.scl_decode_kernel(
        llrs,
        code.frozen_mask,
        da,
        cfg.list_size,
        cfg.metric_mode == "exact",
        cfg.f_mode == "exact",
        cfg.selector == "bitonic",
    )
    u_paths = u_paths[:count]
    metrics = metrics[:count]

    # Least metric wins, path order breaking exact ties.
    best = int(np.lexsort((np.arange(count), metrics))[0])
    selected_by_crc = False
    crc_ok = False
    if code.crc is not None:
        ok = crc_check_rows(u_paths[:, code.info_positions], code.crc)
        if ok.any():
            passing = np.flatnonzero(ok)
            sub = np.lexsort((passing, metrics[passing]))[0]
            best = int(passing[sub])
            selected_by_crc = True
            crc_ok = True
    return SclResult(
        u_hat=u_paths[best].copy(),
        metric=float(metrics[best]),
        crc_ok=crc_ok,
        selected_by_crc=selected_by_crc,
    )
