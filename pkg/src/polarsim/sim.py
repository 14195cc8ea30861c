"""Monte Carlo experiment driver: SNR sweeps, stopping rules, CSV output.

Frames are generated from per-frame generators keyed by ``(master_seed,
point_index, frame_index)``, so every counted quantity (errors, frames,
fallback fraction) is reproducible bit for bit.  Timing columns are honest
measurements and therefore vary between runs; pass ``measure_time=False``
(CLI ``--no-timing``) to blank them when byte-identical result files matter.

Error statistics count payload bits only: the CRC bits carried inside the
non-frozen positions are neither information nor errors.
"""

from __future__ import annotations

import dataclasses
import math
import time
from dataclasses import dataclass

import numpy as np

from .bp import BpConfig, bp_decode
from .channel import RNG_NAME, awgn, channel_llr, ebno_to_sigma, frame_rng, modulate_bpsk
from .hybrid import FrameJob, hybrid_decode_batch, theoretical_throughput
from .polar import CodeConfig, extract_message, insert_message, load_frozen_mask, polar_transform
from .scl import SclConfig, scl_decode

__all__ = ["SimConfig", "SnrRecord", "CSV_HEADER", "run_point", "run_sweep", "write_csv"]

CSV_HEADER = (
    "ebno_db,frames,bit_errors,frame_errors,ber,fer,gamma_bp_fer,"
    "throughput_bps,t_hyb_theo_bps,latency_avg_s,latency_max_s,wall_time_s"
)

_DECODERS = ("sc", "scl", "bp", "hybrid")


@dataclass(frozen=True)
class SimConfig:
    """Everything needed to reproduce a sweep."""

    N: int
    k: int
    decoder: str = "scl"
    crc_width: int = 16            # 0 disables the CRC
    frozen_file: str | None = None
    design_param: float = 0.5
    list_size: int = 8
    metric_mode: str = "exact"
    f_mode: str = "minsum"
    selector: str = "pseudo"
    da_threshold: float = 0.0
    i_max: int = 50
    g_mode: str = "exact"
    ebno_points: tuple[float, ...] = ()
    min_frame_errors: int = 100
    max_frames: int = 100_000
    master_seed: int = 0
    bp_batch_size: int = 32
    n_scl_workers: int = 2
    ebno_rate_includes_crc: bool = False
    measure_time: bool = True

    def __post_init__(self):
        if self.decoder not in _DECODERS:
            raise ValueError(f"unknown decoder {self.decoder!r}, expected one of {_DECODERS}")
        if not self.ebno_points:
            raise ValueError("need at least one Eb/N0 point")
        if self.min_frame_errors < 1 or self.max_frames < 1:
            raise ValueError("stopping rule needs min_frame_errors >= 1 and max_frames >= 1")

    def build_code(self) -> CodeConfig:
        mask = load_frozen_mask(self.frozen_file) if self.frozen_file else None
        crc = self.crc_width if self.crc_width else None
        return CodeConfig(
            self.N, self.k, frozen_mask=mask, crc=crc, design_param=self.design_param
        )

    def rate_for_sigma(self, code: CodeConfig) -> float:
        # By default the stated rate k/N drives the noise conversion; the
        # flag switches to the effective information rate (CRC excluded).
        return code.message_rate if self.ebno_rate_includes_crc else code.rate

    def scl_config(self, list_size: int | None = None) -> SclConfig:
        return SclConfig(
            list_size=self.list_size if list_size is None else list_size,
            metric_mode=self.metric_mode,
            f_mode=self.f_mode,
            selector=self.selector,
            da_threshold=self.da_threshold,
        )

    def bp_config(self, code: CodeConfig, stop_mode: str | None = None) -> BpConfig:
        if stop_mode is None:
            stop_mode = "crc" if code.crc is not None else "reencode"
        return BpConfig(i_max=self.i_max, g_mode=self.g_mode, stop_mode=stop_mode)


@dataclass
class SnrRecord:
    """One CSV row.  NaN marks a column that does not apply to the decoder."""

    ebno_db: float
    frames: int
    bit_errors: int
    frame_errors: int
    ber: float
    fer: float
    gamma_bp_fer: float = math.nan
    throughput_bps: float = math.nan
    t_hyb_theo_bps: float = math.nan
    latency_avg_s: float = math.nan
    latency_max_s: float = math.nan
    wall_time_s: float = math.nan


def _make_frame(code: CodeConfig, sigma: float, rng: np.random.Generator):
    message = rng.integers(0, 2, size=code.message_len).astype(np.uint8)
    x = polar_transform(insert_message(message, code))
    received = awgn(modulate_bpsk(x), sigma, rng)
    return message, channel_llr(received, sigma)


def _stop(cfg: SimConfig, frame_errors: int, frames: int) -> bool:
    return frame_errors >= cfg.min_frame_errors or frames >= cfg.max_frames


def _point_index(cfg: SimConfig, ebno_db: float) -> int:
    points = sorted(cfg.ebno_points)
    for idx, val in enumerate(points):
        if val == ebno_db:
            return idx
    raise ValueError(f"{ebno_db} dB is not one of the configured sweep points")


def run_point(cfg: SimConfig, ebno_db: float) -> SnrRecord:
    """Simulate one Eb/N0 point until the stopping rule fires."""
    code = cfg.build_code()
    sigma = ebno_to_sigma(ebno_db, cfg.rate_for_sigma(code))
    point = _point_index(cfg, ebno_db)
    wall_start = time.perf_counter()

    if cfg.decoder == "hybrid":
        rec = _run_point_hybrid(cfg, code, sigma, point, ebno_db)
    else:
        rec = _run_point_serial(cfg, code, sigma, point, ebno_db)
    rec.wall_time_s = time.perf_counter() - wall_start
    return rec


def _run_point_serial(cfg, code, sigma, point, ebno_db):
    if cfg.decoder in ("sc", "scl"):
        scl_cfg = cfg.scl_config(1 if cfg.decoder == "sc" else None)
        bp_cfg = None
    else:
        scl_cfg = None
        bp_cfg = cfg.bp_config(code)
    frames = bit_errors = frame_errors = bp_failures = 0
    busy = 0.0
    latencies = []
    while not _stop(cfg, frame_errors, frames):
        rng = frame_rng(cfg.master_seed, point, frames)
        message, llrs = _make_frame(code, sigma, rng)
        t0 = time.perf_counter()
        if scl_cfg is not None:
            u_hat = scl_decode(llrs, code, scl_cfg).u_hat
        else:
            result = bp_decode(llrs, code, bp_cfg)
            u_hat = result.u_hat
            bp_failures += not result.converged
        dt = time.perf_counter() - t0
        busy += dt
        latencies.append(dt)
        decoded = extract_message(u_hat, code)[: code.message_len]
        errs = int(np.count_nonzero(decoded != message))
        bit_errors += errs
        frame_errors += errs > 0
        frames += 1
    rec = SnrRecord(
        ebno_db=ebno_db,
        frames=frames,
        bit_errors=bit_errors,
        frame_errors=frame_errors,
        ber=bit_errors / (frames * code.message_len),
        fer=frame_errors / frames,
        throughput_bps=frames * code.message_len / busy if busy > 0 else math.nan,
        latency_avg_s=float(np.mean(latencies)),
        latency_max_s=float(np.max(latencies)),
    )
    if cfg.decoder == "bp":
        rec.gamma_bp_fer = bp_failures / frames
    return rec


def _run_point_hybrid(cfg, code, sigma, point, ebno_db):
    # Jobs flow through the pipeline in chunks of a few draft batches; the
    # stopping rule is evaluated between chunks, so the frame count can
    # overshoot min_frame_errors by at most one chunk.
    chunk_frames = 4 * cfg.bp_batch_size
    scl_cfg = cfg.scl_config()
    bp_cfg = cfg.bp_config(code, stop_mode="crc")
    frames = bit_errors = frame_errors = frames_to_scl = 0
    bp_busy = scl_busy = wall = 0.0
    latencies = []
    while not _stop(cfg, frame_errors, frames):
        remaining = cfg.max_frames - frames
        jobs = []
        for _ in range(min(chunk_frames, remaining)):
            rng = frame_rng(cfg.master_seed, point, frames + len(jobs))
            message, llrs = _make_frame(code, sigma, rng)
            jobs.append(FrameJob(frame_id=frames + len(jobs), llrs=llrs, true_message=message))
        stats = hybrid_decode_batch(
            jobs,
            code,
            bp_cfg,
            scl_cfg,
            bp_batch_size=cfg.bp_batch_size,
            n_scl_workers=cfg.n_scl_workers,
        )
        for job in jobs:
            errs = int(np.count_nonzero(job.message != job.true_message))
            bit_errors += errs
            frame_errors += errs > 0
            latencies.append(job.latency)
        frames += len(jobs)
        frames_to_scl += stats.frames_to_scl
        bp_busy += stats.bp_busy_s
        scl_busy += stats.scl_busy_s
        wall += stats.wall_s
    gamma = frames_to_scl / frames
    bits = frames * code.message_len
    t_bp = bits / bp_busy
    if frames_to_scl:
        t_scl = frames_to_scl * code.message_len / scl_busy
        theo = theoretical_throughput(t_bp, t_scl, gamma)
    else:
        theo = t_bp
    return SnrRecord(
        ebno_db=ebno_db,
        frames=frames,
        bit_errors=bit_errors,
        frame_errors=frame_errors,
        ber=bit_errors / bits,
        fer=frame_errors / frames,
        gamma_bp_fer=gamma,
        throughput_bps=bits / wall,
        t_hyb_theo_bps=theo,
        latency_avg_s=float(np.mean(latencies)),
        latency_max_s=float(np.max(latencies)),
    )


_TIMING_FIELDS = ("throughput_bps", "t_hyb_theo_bps", "latency_avg_s", "latency_max_s", "wall_time_s")


def _fmt(value) -> str:
    if isinstance(value, float):
        if math.isnan(value):
            return ""
        return format(value, ".10g")
    return str(value)


def _record_row(rec: SnrRecord, measure_time: bool) -> str:
    cells = []
    for name in CSV_HEADER.split(","):
        if not measure_time and name in _TIMING_FIELDS:
            cells.append("")
            continue
        cells.append(_fmt(getattr(rec, name)))
    return ",".join(cells)


def _metadata_lines(cfg: SimConfig):
    from . import __version__

    pairs = []
    for key, value in sorted(dataclasses.asdict(cfg).items()):
        if isinstance(value, tuple):
            value = ":".join(format(v, "g") for v in value)
        elif isinstance(value, float):
            value = format(value, "g")
        pairs.append(f"{key}={value}")
    return [
        f"# polarsim {__version__}",
        f"# rng: {RNG_NAME}",
        f"# seed: {cfg.master_seed}",
        "# config: " + " ".join(pairs),
    ]


def write_csv(records, cfg: SimConfig, path) -> None:
    """Write a completed sweep in one go (see run_sweep for progressive output)."""
    with open(path, "w") as fh:
        for line in _metadata_lines(cfg):
            fh.write(line + "\n")
        fh.write(CSV_HEADER + "\n")
        for rec in records:
            fh.write(_record_row(rec, cfg.measure_time) + "\n")


def run_sweep(cfg: SimConfig, out=None):
    """Run all sweep points in ascending Eb/N0 order.

    When ``out`` names a file, metadata and header are written up front and
    each finished point is flushed immediately, so an interrupted sweep
    leaves a readable partial file.
    """
    records = []
    fh = open(out, "w") if out is not None else None
    try:
        if fh is not None:
            for line in _metadata_lines(cfg):
                fh.write(line + "\n")
            fh.write(CSV_HEADER + "\n")
            fh.flush()
        for ebno_db in sorted(cfg.ebno_points):
            rec = run_point(cfg, ebno_db)
            records.append(rec)
            if fh is not None:
                fh.write(_record_row(rec, cfg.measure_time) + "\n")
                fh.flush()
    finally:
        if fh is not None:
            fh.close()
    return records
