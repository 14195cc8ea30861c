"""Polar coding toolkit: encoder, SC/SCL and belief-propagation decoders, a
hybrid two-stage decoder, and a reproducible AWGN Monte Carlo harness."""

__version__ = "0.1.0"

from .bp import BpConfig, BpGraph, BpResult, bp_decode, g_fn, init_graph, iterate_once, pe_endpoints, stopping_check
from .channel import LLR_MAX, ChannelParams, awgn, channel_llr, ebno_to_sigma, frame_rng, modulate_bpsk
from .hybrid import (
    FrameJob,
    HybridStats,
    hybrid_decode_batch,
    hybrid_decode_frame,
    latency_stats,
    theoretical_throughput,
)
from .polar import (
    CodeConfig,
    CrcSpec,
    bhattacharyya_profile,
    construct_frozen_mask,
    crc_check,
    crc_check_rows,
    crc_compute,
    extract_message,
    insert_message,
    load_frozen_mask,
    polar_transform,
    save_frozen_mask,
)
from .scl import (
    SclConfig,
    SclResult,
    bitonic_sort_select,
    decision_aided_mask,
    path_metric_update,
    pseudo_sort_select,
    sc_f,
    sc_g,
    scl_decode,
)
from .sim import CSV_HEADER, SimConfig, SnrRecord, run_point, run_sweep, write_csv
