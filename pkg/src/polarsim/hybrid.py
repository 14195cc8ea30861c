"""Two-stage decoding: a fast message-passing draft, list re-decode on failure.

Every frame first runs belief propagation with the CRC as stop rule.  Frames
whose CRC never verifies are pushed into a bounded FIFO buffer and re-decoded
from the *original* channel LLRs by list-decoder workers; nothing of the
draft pass is reused, so the final answer on a failed frame is exactly what
the list decoder alone would have produced.

Batch accounting mirrors a shared-resource decoder: the draft stage serves
frames in batches, and every frame of a batch shares the batch's service
interval as its draft latency (frames in a batch finish together).  The
pipeline latency of a frame is then the time from entering service to its
final decision, including any buffer wait before a worker picks it up.

All timestamps come from a monotonic clock.
"""

from __future__ import annotations

import queue
import threading
import time
from dataclasses import dataclass, replace

import numpy as np

from .bp import BpConfig, bp_decode
from .polar import CodeConfig, extract_message
from .scl import SclConfig, scl_decode

__all__ = [
    "FrameJob",
    "HybridStats",
    "hybrid_decode_frame",
    "hybrid_decode_batch",
    "theoretical_throughput",
    "latency_stats",
]


@dataclass
class FrameJob:
    """One frame moving through the pipeline.

    ``status`` walks pending -> bp_done_ok, or pending -> bp_failed ->
    scl_done.  The scl timestamps stay NaN unless the frame went through the
    fallback.
    """

    frame_id: int
    llrs: np.ndarray
    true_message: np.ndarray | None = None
    status: str = "pending"
    provenance: str = ""
    message: np.ndarray | None = None
    t_enqueue: float = np.nan
    t_bp_start: float = np.nan
    t_bp_end: float = np.nan
    t_scl_start: float = np.nan
    t_scl_end: float = np.nan

    @property
    def latency(self) -> float:
        """Seconds from entering service to the final decision."""
        end = self.t_scl_end if self.status == "scl_done" else self.t_bp_end
        return end - self.t_enqueue


@dataclass
class HybridStats:
    """Aggregate counters and timings of one batch run."""

    frames_total: int
    frames_to_scl: int
    gamma_bp_fer: float
    info_bits: int
    t_bp_bps: float          # draft-stage information throughput
    t_scl_bps: float         # fallback throughput (NaN when unused)
    t_hyb_theo_bps: float    # model prediction from the measured pieces
    throughput_bps: float    # information bits / pipeline wall time
    bp_busy_s: float
    scl_busy_s: float
    wall_s: float
    overhead_s: float        # wall minus busy; scheduling and bookkeeping
    latency_avg_s: float
    latency_max_s: float


def theoretical_throughput(t_bp: float, t_scl: float, gamma: float) -> float:
    """Throughput model ``t_bp * t_scl / (t_scl + gamma * t_bp)``.

    Assumes the two decoders share one resource: all frames pay the draft
    pass, a fraction ``gamma`` additionally pays the fallback.
    """
    if not (t_bp > 0 and t_scl > 0):
        raise ValueError("throughputs must be positive")
    if not (0.0 <= gamma <= 1.0):
        raise ValueError(f"gamma must lie in [0, 1], got {gamma}")
    if gamma == 0.0:
        return float(t_bp)
    return float(t_bp * t_scl / (t_scl + gamma * t_bp))


def latency_stats(jobs: list[FrameJob]) -> dict[str, float]:
    """Mean and worst-case latency for the pipeline and both stages.

    The scl entries are NaN when no frame used the fallback.
    """
    if not jobs:
        raise ValueError("no jobs to summarize")
    hyb = np.array([j.latency for j in jobs])
    bp_seg = np.array([j.t_bp_end - j.t_bp_start for j in jobs])
    scl_seg = np.array(
        [j.t_scl_end - j.t_scl_start for j in jobs if j.status == "scl_done"]
    )
    out = {
        "hybrid_avg_s": float(hyb.mean()),
        "hybrid_max_s": float(hyb.max()),
        "bp_avg_s": float(bp_seg.mean()),
        "bp_max_s": float(bp_seg.max()),
        "scl_avg_s": float(scl_seg.mean()) if scl_seg.size else float("nan"),
        "scl_max_s": float(scl_seg.max()) if scl_seg.size else float("nan"),
    }
    return out


def _payload(u_hat: np.ndarray, code: CodeConfig) -> np.ndarray:
    return extract_message(u_hat, code)[: code.message_len]


def hybrid_decode_frame(
    llrs: np.ndarray,
    code: CodeConfig,
    bp_cfg: BpConfig | None = None,
    scl_cfg: SclConfig | None = None,
):
    """Decode one frame; returns ``(message_bits, provenance)``.

    provenance is "bp" when the draft pass verified, "scl" otherwise.  The
    fallback always starts from the unmodified channel LLRs.
    """
    if code.crc is None:
        raise ValueError("hybrid decoding needs a CRC to detect draft failures")
    bp_cfg = replace(bp_cfg or BpConfig(), stop_mode="crc")
    scl_cfg = scl_cfg or SclConfig()
    draft = bp_decode(llrs, code, bp_cfg)
    if draft.converged:
        return _payload(draft.u_hat, code), "bp"
    result = scl_decode(llrs, code, scl_cfg)
    return _payload(result.u_hat, code), "scl"


def hybrid_decode_batch(
    jobs: list[FrameJob],
    code: CodeConfig,
    bp_cfg: BpConfig | None = None,
    scl_cfg: SclConfig | None = None,
    *,
    bp_batch_size: int = 32,
    n_scl_workers: int = 2,
    buffer_capacity: int | None = None,
) -> HybridStats:
    """Run the producer/consumer pipeline over a list of jobs.

    The draft stage consumes jobs in batches; failed frames go through a
    bounded FIFO buffer (default capacity four batches) to the fallback
    workers, blocking the producer when full rather than dropping frames.
    Job objects are completed in place; the returned stats are aggregated
    only after all workers have drained.
    """
    if not jobs:
        raise ValueError("no jobs to decode")
    if code.crc is None:
        raise ValueError("hybrid decoding needs a CRC to detect draft failures")
    if bp_batch_size < 1 or n_scl_workers < 1:
        raise ValueError("batch size and worker count must be at least 1")
    bp_cfg = replace(bp_cfg or BpConfig(), stop_mode="crc")
    scl_cfg = scl_cfg or SclConfig()
    capacity = buffer_capacity if buffer_capacity is not None else 4 * bp_batch_size
    buffer: queue.Queue = queue.Queue(maxsize=capacity)
    scl_busy = [0.0] * n_scl_workers

    def fallback_worker(slot: int) -> None:
        busy = 0.0
        while True:
            job = buffer.get()
            if job is None:
                break
            t0 = time.perf_counter()
            result = scl_decode(job.llrs, code, scl_cfg)
            t1 = time.perf_counter()
            job.t_scl_start = t0
            job.t_scl_end = t1
            job.message = _payload(result.u_hat, code)
            job.provenance = "scl"
            job.status = "scl_done"
            busy += t1 - t0
        scl_busy[slot] = busy

    workers = [
        threading.Thread(target=fallback_worker, args=(slot,), daemon=True)
        for slot in range(n_scl_workers)
    ]
    wall_start = time.perf_counter()
    for w in workers:
        w.start()

    bp_busy = 0.0
    for start in range(0, len(jobs), bp_batch_size):
        batch = jobs[start : start + bp_batch_size]
        t0 = time.perf_counter()
        for job in batch:
            job.t_enqueue = t0
            job.t_bp_start = t0
        drafts = [bp_decode(job.llrs, code, bp_cfg) for job in batch]
        t1 = time.perf_counter()
        bp_busy += t1 - t0
        for job, draft in zip(batch, drafts):
            job.t_bp_end = t1
            if draft.converged:
                job.message = _payload(draft.u_hat, code)
                job.provenance = "bp"
                job.status = "bp_done_ok"
            else:
                job.status = "bp_failed"
                buffer.put(job)  # blocks when the buffer is full
    for _ in workers:
        buffer.put(None)
    for w in workers:
        w.join()
    wall = time.perf_counter() - wall_start

    frames_total = len(jobs)
    frames_to_scl = sum(1 for j in jobs if j.status == "scl_done")
    gamma = frames_to_scl / frames_total
    bits_total = frames_total * code.message_len
    bits_scl = frames_to_scl * code.message_len
    scl_busy_total = sum(scl_busy)
    t_bp = bits_total / bp_busy
    t_scl = bits_scl / scl_busy_total if frames_to_scl else float("nan")
    theo = t_bp if frames_to_scl == 0 else theoretical_throughput(t_bp, t_scl, gamma)
    lat = latency_stats(jobs)
    return HybridStats(
        frames_total=frames_total,
        frames_to_scl=frames_to_scl,
        gamma_bp_fer=gamma,
        info_bits=bits_total,
        t_bp_bps=t_bp,
        t_scl_bps=t_scl,
        t_hyb_theo_bps=theo,
        throughput_bps=bits_total / wall,
        bp_busy_s=bp_busy,
        scl_busy_s=scl_busy_total,
        wall_s=wall,
        overhead_s=wall - bp_busy - scl_busy_total,
        latency_avg_s=lat["hybrid_avg_s"],
        latency_max_s=lat["hybrid_max_s"],
    )
