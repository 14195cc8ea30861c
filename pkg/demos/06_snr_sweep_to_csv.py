"""
Running a full error-rate sweep and writing the results as CSV.

The same thing is available from the command line:

    python3 -m polarsim --decoder scl -N 256 -k 128 --crc 16 -L 4 \
        --ebno 1:3:1 --min-frame-errors 20 --max-frames 2000 --out sweep.csv
"""

import tempfile
from pathlib import Path

import polarsim as ps

cfg = ps.SimConfig(
    N=256,
    k=128,
    decoder="scl",
    crc_width=16,
    list_size=4,
    ebno_points=(1.0, 2.0, 3.0),
    min_frame_errors=20,
    max_frames=2000,
    master_seed=606,
)

with tempfile.TemporaryDirectory() as d:
    path = Path(d) / "sweep.csv"
    ps.run_sweep(cfg, path)
    text = path.read_text()
print(text)

# The file starts with commented metadata, then a fixed header row.  The
# column set is identical for every decoder; fields that do not apply
# (here: gamma, which only a BP stage produces) are left empty.
lines = text.splitlines()
assert lines[0].startswith("# polarsim")
header = next(l for l in lines if not l.startswith("#"))
assert header == ps.CSV_HEADER
print("columns:", header.split(","))
