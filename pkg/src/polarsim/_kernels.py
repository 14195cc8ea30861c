"""Compiled kernels for the successive-cancellation list decoder.

The decoder state lives in flat per-path workspaces:

- ``llr``: float64 array of shape (L, N-1).  Level ``s`` (0 <= s < n) holds
  ``2**s`` soft values starting at offset ``2**s - 1``; the channel LLRs form
  the implicit top level and are read directly from the input.
- ``psum``: uint8 array of the same layout holding, per level, the re-encoded
  bits of the completed left half feeding the next g-update.
- ``u_hat``: uint8 array of shape (L, N) with the per-path bit decisions.

Every path owns its workspace rows outright; nothing is shared or copied
lazily between paths.  At a branching bit the surviving child with ``u = 0``
keeps its parent's rows in place, and when both children of a parent survive
the ``u = 1`` child is duplicated immediately into a freed (or still unused)
slot.  Only tree levels that can still be read are copied: after bit ``i``,
llr level ``s`` is consumed again only while the left half of its subtree is
in progress (bit ``s-1`` of ``i`` clear), and psum level ``s`` only while a
completed left half awaits its sibling (bit ``s`` of ``i`` set).  All
functions are deterministic and hold no global state, which keeps them safe
to call from worker threads.
"""

from __future__ import annotations

import numpy as np
from numba import njit

__all__ = [
    "f_minsum",
    "f_boxplus",
    "g_update",
    "metric_increment",
    "pseudo_rank",
    "bitonic_sort_pairs",
    "scl_decode_kernel",
]


@njit(cache=True)
def f_minsum(a: float, b: float) -> float:
    """Check-node update, min-sum form: sign(a)sign(b)min(|a|,|b|)."""
    mag = min(abs(a), abs(b))
    if (a < 0.0) != (b < 0.0):
        mag = -mag
    if a == 0.0 or b == 0.0:
        return 0.0
    return mag


@njit(cache=True)
def f_boxplus(a: float, b: float) -> float:
    """Exact check-node update ln((1 + e^(a+b)) / (e^a + e^b))."""
    s = a + b
    # ln(1 + e^s), guarded against overflow
    if s > 0.0:
        num = s + np.log1p(np.exp(-s))
    else:
        num = np.log1p(np.exp(s))
    # ln(e^a + e^b) = max + ln(1 + e^(-|a-b|))
    if a >= b:
        den = a + np.log1p(np.exp(b - a))
    else:
        den = b + np.log1p(np.exp(a - b))
    return num - den


@njit(cache=True)
def g_update(a: float, b: float, u: int) -> float:
    """Variable-node update b + (1 - 2u) a for a decided partial sum u."""
    if u:
        return b - a
    return b + a


@njit(cache=True)
def metric_increment(lam: float, u: int, exact: bool) -> float:
    """Path metric penalty for deciding bit ``u`` against soft value ``lam``.

    Exact form: ln(1 + exp(-(1 - 2u) lam)).  Approximate form: |lam| when the
    decision disagrees with the hard sign (negative lam means bit 1), else 0.
    """
    x = -lam if u else lam
    if exact:
        if x > 0.0:
            return np.log1p(np.exp(-x))
        return -x + np.log1p(np.exp(x))
    if x < 0.0:
        return -x
    return 0.0


@njit(cache=True)
def pseudo_rank(metrics: np.ndarray) -> np.ndarray:
    """Pairwise comparison ranks: d[i] = #{j : m[j] < m[i], or tie with j <= i}.

    This matches summing a unit step over all metric differences, with equal
    metrics resolved in index order so that ranks form a permutation of
    1..len(metrics).
    """
    m = metrics.size
    d = np.empty(m, dtype=np.int64)
    for i in range(m):
        mi = metrics[i]
        c = 0
        for j in range(m):
            mj = metrics[j]
            if mj < mi or (mj == mi and j <= i):
                c += 1
        d[i] = c
    return d


@njit(cache=True)
def bitonic_sort_pairs(metrics: np.ndarray, idx: np.ndarray) -> None:
    """In-place bitonic network sort, ascending by the pair (metric, index).

    Length must be a power of two.  The full compare-exchange schedule is run
    unconditionally, mirroring the fixed wiring of a hardware sorter.
    """
    m = metrics.size
    k = 2
    while k <= m:
        j = k >> 1
        while j >= 1:
            for i in range(m):
                l = i ^ j
                if l > i:
                    a = metrics[i]
                    b = metrics[l]
                    gt = a > b or (a == b and idx[i] > idx[l])
                    lt = a < b or (a == b and idx[i] < idx[l])
                    ascending = (i & k) == 0
                    if (ascending and gt) or ((not ascending) and lt):
                        metrics[i] = b
                        metrics[l] = a
                        t = idx[i]
                        idx[i] = idx[l]
                        idx[l] = t
            j >>= 1
        k <<= 1


@njit(cache=True)
def scl_decode_kernel(
    chan_llrs: np.ndarray,
    frozen_mask: np.ndarray,
    da_mask: np.ndarray,
    L: int,
    exact_metric: bool,
    exact_f: bool,
    use_bitonic: bool,
):
    """Run list decoding over one frame of channel LLRs.

    Returns ``(u_hat, metrics, count)`` where the first ``count`` rows are the
    surviving paths.  Rows keep their slots between selections, so they carry
    no particular metric order; callers rank by the returned metrics.
    """
    N = chan_llrs.size
    n = 0
    while (1 << n) < N:
        n += 1
    half_top = N >> 1
    W = N - 1

    llr = np.zeros((L, W), dtype=np.float64)
    ps = np.zeros((L, W), dtype=np.uint8)
    u_hat = np.zeros((L, N), dtype=np.uint8)
    metric = np.zeros(L, dtype=np.float64)

    cand = np.empty(2 * L, dtype=np.float64)
    keep = np.zeros(2 * L, dtype=np.uint8)
    free_slots = np.empty(L, dtype=np.int64)
    m2 = 1
    while m2 < 2 * L:
        m2 <<= 1
    bm = np.empty(m2, dtype=np.float64)
    bi = np.empty(m2, dtype=np.int64)
    sv = np.empty(N, dtype=np.uint8)
    sw = np.empty(N, dtype=np.uint8)

    P = 1
    for i in range(N):
        # Soft-value chain down to the decision level for every live path.
        for p in range(P):
            if i == 0:
                base = half_top - 1
                for t in range(half_top):
                    a = chan_llrs[t]
                    b = chan_llrs[t + half_top]
                    if exact_f:
                        llr[p, base + t] = f_boxplus(a, b)
                    else:
                        llr[p, base + t] = f_minsum(a, b)
                s = n - 2
            else:
                tz = 0
                ii = i
                while ii & 1 == 0:
                    ii >>= 1
                    tz += 1
                if tz == n - 1:
                    base = half_top - 1
                    for t in range(half_top):
                        llr[p, base + t] = g_update(
                            chan_llrs[t], chan_llrs[t + half_top], ps[p, base + t]
                        )
                else:
                    pb = (1 << (tz + 1)) - 1
                    sb = (1 << tz) - 1
                    w = 1 << tz
                    for t in range(w):
                        llr[p, sb + t] = g_update(
                            llr[p, pb + t], llr[p, pb + w + t], ps[p, sb + t]
                        )
                s = tz - 1
            while s >= 0:
                pb = (1 << (s + 1)) - 1
                sb = (1 << s) - 1
                w = 1 << s
                for t in range(w):
                    a = llr[p, pb + t]
                    b = llr[p, pb + w + t]
                    if exact_f:
                        llr[p, sb + t] = f_boxplus(a, b)
                    else:
                        llr[p, sb + t] = f_minsum(a, b)
                s -= 1

        if frozen_mask[i]:
            for p in range(P):
                metric[p] += metric_increment(llr[p, 0], 0, exact_metric)
                u_hat[p, i] = 0
        elif da_mask[i]:
            # Reliable position: follow the per-path hard decision, no branch.
            for p in range(P):
                lam = llr[p, 0]
                u = 1 if lam < 0.0 else 0
                metric[p] += metric_increment(lam, u, exact_metric)
                u_hat[p, i] = u
        else:
            for c in range(2 * L):
                cand[c] = np.inf
                keep[c] = 0
            for p in range(P):
                lam = llr[p, 0]
                cand[p] = metric[p] + metric_increment(lam, 0, exact_metric)
                cand[L + p] = metric[p] + metric_increment(lam, 1, exact_metric)

            # Mark the up-to-L best candidates; both selectors pick the same
            # set, so the choice only affects how the work is carried out.
            if use_bitonic:
                for c in range(m2):
                    bm[c] = np.inf
                    bi[c] = c
                for c in range(2 * L):
                    bm[c] = cand[c]
                bitonic_sort_pairs(bm, bi)
                for rank in range(L):
                    if bm[rank] < np.inf:
                        keep[bi[rank]] = 1
            else:
                d = pseudo_rank(cand)
                for c in range(2 * L):
                    if d[c] <= L and cand[c] < np.inf:
                        keep[c] = 1

            # Survivors stay in their parent's slot; the u=0 child has first
            # claim on it.  Parents losing both children free their slot.
            nf = 0
            for p in range(P):
                if keep[p]:
                    u_hat[p, i] = 0
                    metric[p] = cand[p]
                elif keep[L + p]:
                    u_hat[p, i] = 1
                    metric[p] = cand[L + p]
                else:
                    free_slots[nf] = p
                    nf += 1

            # Duplicate twice-surviving parents into the lowest open slots,
            # copying only the still-readable tree levels and decided bits.
            fi = 0
            virgin = P
            newP = P - nf
            for p in range(P):
                if keep[p] and keep[L + p]:
                    if fi < nf:
                        q = free_slots[fi]
                        fi += 1
                    else:
                        q = virgin
                        virgin += 1
                    for s in range(1, n):
                        if ((i >> (s - 1)) & 1) == 0:
                            base = (1 << s) - 1
                            for t in range(1 << s):
                                llr[q, base + t] = llr[p, base + t]
                    for s in range(n):
                        if ((i >> s) & 1) == 1:
                            base = (1 << s) - 1
                            for t in range(1 << s):
                                ps[q, base + t] = ps[p, base + t]
                    for t in range(i):
                        u_hat[q, t] = u_hat[p, t]
                    u_hat[q, i] = 1
                    metric[q] = cand[L + p]
                    newP += 1
            P = newP

        # Fold the fresh decision into the partial sums.
        for p in range(P):
            sv[0] = u_hat[p, i]
            length = 1
            s = 0
            while s < n and ((i >> s) & 1) == 1:
                base = (1 << s) - 1
                for t in range(length):
                    sw[t] = ps[p, base + t] ^ sv[t]
                    sw[length + t] = sv[t]
                tmps = sv
                sv = sw
                sw = tmps
                length <<= 1
                s += 1
            if s < n:
                base = (1 << s) - 1
                for t in range(length):
                    ps[p, base + t] = sv[t]

    return u_hat, metric, P
