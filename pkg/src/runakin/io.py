"""File formats: series CSV, binary snapshots, and atomic writes.

CSV numbers use Python's repr (shortest round-trip form of the 64-bit
float), so identical runs produce byte-identical files. All writers go
through a temp-file + rename so readers never observe a truncated file.
"""

from __future__ import annotations

import os
import struct
import tempfile

import numpy as np

from .diagnostics import TimeSeriesRecord
from .errors import GridMismatchError
from .grid import Distribution, VelocityGrid

SERIES_HEADER = "t,Vx,Vy,Vz,T,Rx,Ry,Rz,mass,loss,ratio,dist"

SNAPSHOT_MAGIC = b"RNWYSNAP"
SNAPSHOT_VERSION = 1
# magic, version, n, n_x, extent, center*3, t, V*3, T  (little endian)
_HEADER_FMT = "<8sIII" + "d" * 9


def atomic_write_bytes(path: str, data: bytes):
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def atomic_write_text(path: str, text: str):
    atomic_write_bytes(path, text.encode())


def _fmt(x: float) -> str:
    return repr(float(x))


def series_to_csv(records) -> str:
    lines = [SERIES_HEADER]
    for r in records:
        lines.append(",".join(
            _fmt(x) for x in (r.t, *r.V, r.T, *r.R, r.mass, r.loss,
                              r.ratio, r.dist)))
    return "\n".join(lines) + "\n"


def write_series_csv(path: str, records):
    atomic_write_text(path, series_to_csv(records))


def read_series_csv(path: str):
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines or lines[0] != SERIES_HEADER:
        raise ValueError(
            f"series file {path!r} does not start with the header "
            f"{SERIES_HEADER!r}")
    records = []
    for k, ln in enumerate(lines[1:], start=2):
        parts = ln.split(",")
        if len(parts) != 12:
            raise ValueError(f"series file {path!r} line {k}: expected 12 "
                             f"columns, got {len(parts)}")
        vals = [float(p) for p in parts]
        records.append(TimeSeriesRecord(
            t=vals[0], V=tuple(vals[1:4]), T=vals[4], R=tuple(vals[5:8]),
            mass=vals[8], loss=vals[9], ratio=vals[10], dist=vals[11]))
    for a, b in zip(records, records[1:]):
        if not b.t > a.t:
            raise ValueError(f"series file {path!r}: time not strictly "
                             f"increasing at t={b.t}")
    return records


def snapshot_bytes(F: Distribution, t: float, V, T: float) -> bytes:
    g = F.grid
    head = struct.pack(_HEADER_FMT, SNAPSHOT_MAGIC, SNAPSHOT_VERSION,
                       g.n, F.n_x, g.extent, *g.center, t, *np.asarray(V, float), T)
    body = np.ascontiguousarray(F.values, dtype="<f8").tobytes()
    return head + body


def write_snapshot(path: str, F: Distribution, t: float, V, T: float):
    atomic_write_bytes(path, snapshot_bytes(F, t, V, T))


def read_snapshot(path: str):
    """Returns (Distribution, t, V, T)."""
    with open(path, "rb") as fh:
        raw = fh.read()
    head_size = struct.calcsize(_HEADER_FMT)
    if len(raw) < head_size:
        raise ValueError(f"snapshot {path!r}: truncated header")
    magic, version, n, n_x, extent, c1, c2, c3, t, v1, v2, v3, T = \
        struct.unpack(_HEADER_FMT, raw[:head_size])
    if magic != SNAPSHOT_MAGIC:
        raise ValueError(f"snapshot {path!r}: bad magic {magic!r}")
    if version != SNAPSHOT_VERSION:
        raise ValueError(f"snapshot {path!r}: unsupported version {version}")
    count = n_x * n ** 3
    body = np.frombuffer(raw[head_size:], dtype="<f8")
    if body.size != count:
        raise GridMismatchError(
            f"snapshot {path!r}: {body.size} values, expected {count}")
    grid = VelocityGrid(extent, n, (c1, c2, c3))
    F = Distribution(grid, body.reshape(n_x, n, n, n).astype(float))
    return F, t, np.array([v1, v2, v3]), T
