"""Command line front end for SNR sweeps."""

from __future__ import annotations

import argparse
import sys

from .sim import SimConfig, _record_row, run_point, CSV_HEADER, _metadata_lines


def _parse_ebno_range(text: str):
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected START:STOP:STEP")
    start, stop, step = (float(p) for p in parts)
    if step <= 0:
        raise argparse.ArgumentTypeError("STEP must be positive")
    values = []
    i = 0
    while True:
        v = start + i * step
        if v > stop + 1e-9:
            break
        values.append(round(v, 9))
        i += 1
    if not values:
        raise argparse.ArgumentTypeError("empty Eb/N0 range")
    return tuple(values)


def _parse_ebno_list(text: str):
    try:
        return tuple(float(p) for p in text.split(",") if p.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="polarsim", description=__doc__)
    ap.add_argument("--n", type=int, required=True, help="block length (power of two)")
    size = ap.add_mutually_exclusive_group(required=True)
    size.add_argument("--k", type=int, help="number of non-frozen positions")
    size.add_argument("--rate", type=float, help="k/N; k is rounded to the nearest integer")
    ap.add_argument("--frozen-file", help="file with one line of N '0'/'1' chars, 1 = frozen")
    ap.add_argument("--decoder", choices=("sc", "scl", "bp", "hybrid"), default="scl")
    ap.add_argument("--list-size", type=int, default=8)
    ap.add_argument("--crc", choices=("none", "8", "16", "24"), default="16")
    ap.add_argument("--imax", type=int, default=50, help="belief propagation iteration cap")
    ap.add_argument("--g-mode", choices=("exact", "min"), default="exact")
    ap.add_argument("--metric", choices=("exact", "approx"), default="exact")
    ap.add_argument("--selector", choices=("bitonic", "pseudo"), default="pseudo")
    ap.add_argument("--da-threshold", type=float, default=0.0)
    pts = ap.add_mutually_exclusive_group(required=True)
    pts.add_argument("--ebno", type=_parse_ebno_range, metavar="START:STOP:STEP")
    pts.add_argument("--ebno-list", type=_parse_ebno_list, metavar="V1,V2,...")
    ap.add_argument("--min-frame-errors", type=int, default=100)
    ap.add_argument("--max-frames", type=int, default=100_000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--bp-batch", type=int, default=32)
    ap.add_argument("--scl-workers", type=int, default=2)
    ap.add_argument("--design-param", type=float, default=0.5)
    ap.add_argument(
        "--ebno-rate-includes-crc",
        action="store_true",
        help="derive sigma from the effective information rate (k-c)/N instead of k/N",
    )
    ap.add_argument("--no-timing", action="store_true", help="blank timing columns for reproducible files")
    ap.add_argument("--out", help="CSV output path (default: stdout)")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    k = args.k if args.k is not None else round(args.rate * args.n)
    cfg = SimConfig(
        N=args.n,
        k=k,
        decoder=args.decoder,
        crc_width=0 if args.crc == "none" else int(args.crc),
        frozen_file=args.frozen_file,
        design_param=args.design_param,
        list_size=args.list_size,
        metric_mode=args.metric,
        selector=args.selector,
        da_threshold=args.da_threshold,
        i_max=args.imax,
        g_mode=args.g_mode,
        ebno_points=args.ebno if args.ebno is not None else args.ebno_list,
        min_frame_errors=args.min_frame_errors,
        max_frames=args.max_frames,
        master_seed=args.seed,
        bp_batch_size=args.bp_batch,
        n_scl_workers=args.scl_workers,
        ebno_rate_includes_crc=args.ebno_rate_includes_crc,
        measure_time=not args.no_timing,
    )
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        for line in _metadata_lines(cfg):
            out.write(line + "\n")
        out.write(CSV_HEADER + "\n")
        out.flush()
        for ebno_db in sorted(cfg.ebno_points):
            rec = run_point(cfg, ebno_db)
            out.write(_record_row(rec, cfg.measure_time) + "\n")
            out.flush()
            if args.out:
                print(
                    f"{ebno_db:g} dB: frames={rec.frames} ber={rec.ber:.3e} fer={rec.fer:.3e}",
                    file=sys.stderr,
                )
    finally:
        if args.out:
            out.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
