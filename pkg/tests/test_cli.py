import subprocess
import sys

import pytest

from polarsim.cli import _parse_ebno_list, _parse_ebno_range, build_parser, main


def run_cli(*argv):
    return main(list(argv))


def test_ebno_range_parsing():
    assert _parse_ebno_range("0:2:0.5") == (0.0, 0.5, 1.0, 1.5, 2.0)
    assert _parse_ebno_range("1:1:1") == (1.0,)
    # the end point is included despite accumulated float error
    assert _parse_ebno_range("0:0.3:0.1") == (0.0, 0.1, 0.2, 0.3)


def test_ebno_range_rejects_bad_input():
    import argparse

    for text in ("0:2", "2:0:0.5", "0:1:0", "0:1:-1"):
        with pytest.raises(argparse.ArgumentTypeError):
            _parse_ebno_range(text)


def test_ebno_list_parsing():
    assert _parse_ebno_list("1,2.5,4") == (1.0, 2.5, 4.0)
    assert _parse_ebno_list("3") == (3.0,)


def test_parser_flag_coverage():
    ap = build_parser()
    args = ap.parse_args(
        [
            "--n", "128", "--k", "64", "--decoder", "scl", "--list-size", "16",
            "--crc", "none", "--imax", "30", "--g-mode", "min", "--metric", "approx",
            "--selector", "bitonic", "--da-threshold", "0.1",
            "--ebno-list", "1,2", "--min-frame-errors", "10", "--max-frames", "500",
            "--seed", "7", "--bp-batch", "16", "--scl-workers", "3",
        ]
    )
    assert args.n == 128 and args.k == 64
    assert args.crc == "none"
    assert args.selector == "bitonic"
    assert args.ebno_list == (1.0, 2.0)


def test_rate_flag_sets_k(tmp_path):
    out = tmp_path / "r.csv"
    run_cli(
        "--n", "64", "--rate", "0.5", "--crc", "none", "--decoder", "sc",
        "--ebno-list", "8", "--min-frame-errors", "1", "--max-frames", "5",
        "--out", str(out),
    )
    assert "k=32" in out.read_text()


def test_cli_writes_csv(tmp_path):
    out = tmp_path / "sweep.csv"
    rc = run_cli(
        "--n", "64", "--k", "32", "--crc", "8", "--decoder", "scl", "--list-size", "2",
        "--ebno", "1:2:1", "--min-frame-errors", "2", "--max-frames", "50",
        "--seed", "1", "--out", str(out),
    )
    assert rc == 0
    lines = out.read_text().strip().split("\n")
    assert lines[0].startswith("# polarsim ")
    body = [ln for ln in lines if not ln.startswith("#")]
    assert body[0].startswith("ebno_db,")
    assert len(body) == 3  # header plus one row per sweep point


def test_cli_no_timing_deterministic(tmp_path):
    args = [
        "--n", "64", "--k", "32", "--crc", "none", "--decoder", "scl", "--list-size", "2",
        "--ebno-list", "2", "--min-frame-errors", "2", "--max-frames", "40",
        "--no-timing",
    ]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run_cli(*args, "--out", str(a))
    run_cli(*args, "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_cli_frozen_file(tmp_path):
    from polarsim import construct_frozen_mask, save_frozen_mask

    mask_path = tmp_path / "mask.txt"
    save_frozen_mask(construct_frozen_mask(64, 32), mask_path)
    out = tmp_path / "o.csv"
    rc = run_cli(
        "--n", "64", "--k", "32", "--crc", "none", "--frozen-file", str(mask_path),
        "--decoder", "sc", "--ebno-list", "7", "--min-frame-errors", "1",
        "--max-frames", "5", "--out", str(out),
    )
    assert rc == 0
    assert out.exists()


def test_cli_entry_point_stdout():
    # module execution path, writing to stdout
    proc = subprocess.run(
        [
            sys.executable, "-m", "polarsim",
            "--n", "32", "--k", "16", "--crc", "none", "--decoder", "sc",
            "--ebno-list", "6", "--min-frame-errors", "1", "--max-frames", "5",
            "--no-timing",
        ],
        capture_output=True,
        text=True,
        timeout=300,
    )
    assert proc.returncode == 0
    assert "ebno_db," in proc.stdout
    assert proc.stdout.strip().split("\n")[-1].startswith("6,")
