import os

import numpy as np
import pytest

from runakin.diagnostics import TimeSeriesRecord
from runakin.errors import GridMismatchError
from runakin.grid import Distribution, VelocityGrid, maxwellian
from runakin.io import (SERIES_HEADER, atomic_write_text, read_series_csv,
                        read_snapshot, series_to_csv, snapshot_bytes,
                        write_series_csv, write_snapshot)


def sample_records(n=4, dt=0.05):
    recs = []
    for k in range(n):
        t = k * dt
        recs.append(TimeSeriesRecord(
            t=t, V=(20.0 * t, 0.0, 1e-17), T=1.0 + 0.01 * t,
            R=(0.1 / (1 + t), 0.0, 0.0), mass=1.0, loss=0.0,
            ratio=20.0 * t, dist=0.01 * np.exp(-t)))
    return recs


class TestSeriesCsv:
    def test_round_trip_exact(self, tmp_path):
        path = str(tmp_path / "series.csv")
        recs = sample_records()
        write_series_csv(path, recs)
        back = read_series_csv(path)
        assert len(back) == len(recs)
        for a, b in zip(recs, back):
            # repr format is the shortest round-trip form: exact floats back
            assert a.t == b.t and a.T == b.T and a.dist == b.dist
            assert a.V == b.V and a.R == b.R

    def test_byte_identical_for_same_records(self):
        assert series_to_csv(sample_records()) == series_to_csv(sample_records())

    def test_header_enforced(self, tmp_path):
        path = str(tmp_path / "bad.csv")
        atomic_write_text(path, "time,stuff\n1,2\n")
        with pytest.raises(ValueError, match="header"):
            read_series_csv(path)

    def test_column_count_enforced(self, tmp_path):
        path = str(tmp_path / "bad.csv")
        atomic_write_text(path, SERIES_HEADER + "\n1.0,2.0,3.0\n")
        with pytest.raises(ValueError, match="line 2"):
            read_series_csv(path)

    def test_time_monotonicity_enforced(self, tmp_path):
        path = str(tmp_path / "bad.csv")
        rows = series_to_csv(sample_records()).splitlines()
        rows.append(rows[1])  # repeat t=0 at the end
        atomic_write_text(path, "\n".join(rows) + "\n")
        with pytest.raises(ValueError, match="strictly"):
            read_series_csv(path)

    def test_no_temp_files_left(self, tmp_path):
        path = str(tmp_path / "series.csv")
        write_series_csv(path, sample_records())
        assert os.listdir(tmp_path) == ["series.csv"]


class TestSnapshot:
    def test_round_trip(self, tmp_path):
        g = VelocityGrid(8.0, 16, (2.0, 0.0, -1.0))
        F = maxwellian(g, (2.0, 0.0, -1.0), 1.3)
        path = str(tmp_path / "state.snap")
        write_snapshot(path, F, 2.5, (2.0, 0.0, -1.0), 1.3)
        F2, t, V, T = read_snapshot(path)
        assert t == 2.5 and T == 1.3
        np.testing.assert_array_equal(V, [2.0, 0.0, -1.0])
        assert F2.grid.n == g.n and F2.grid.extent == g.extent
        np.testing.assert_array_equal(F2.grid.center, g.center)
        np.testing.assert_array_equal(F2.values, F.values)

    def test_bad_magic_rejected(self, tmp_path):
        path = str(tmp_path / "state.snap")
        g = VelocityGrid(6.0, 8, (0.0, 0.0, 0.0))
        raw = snapshot_bytes(maxwellian(g, (0, 0, 0), 1.0), 0.0, (0, 0, 0), 1.0)
        with open(path, "wb") as fh:
            fh.write(b"NOTMAGIC" + raw[8:])
        with pytest.raises(ValueError, match="magic"):
            read_snapshot(path)

    def test_truncated_body_rejected(self, tmp_path):
        path = str(tmp_path / "state.snap")
        g = VelocityGrid(6.0, 8, (0.0, 0.0, 0.0))
        raw = snapshot_bytes(maxwellian(g, (0, 0, 0), 1.0), 0.0, (0, 0, 0), 1.0)
        with open(path, "wb") as fh:
            fh.write(raw[:-16])
        with pytest.raises(GridMismatchError):
            read_snapshot(path)

    def test_truncated_header_rejected(self, tmp_path):
        path = str(tmp_path / "state.snap")
        with open(path, "wb") as fh:
            fh.write(b"RNWY")
        with pytest.raises(ValueError, match="truncated"):
            read_snapshot(path)

    def test_spatial_cells_round_trip(self, tmp_path):
        g = VelocityGrid(6.0, 8, (0.0, 0.0, 0.0))
        vals = np.stack([maxwellian(g, (0, 0, 0), 1.0).values[0]] * 3)
        vals[1] *= 1.1
        F = Distribution(g, vals)
        path = str(tmp_path / "state.snap")
        write_snapshot(path, F, 0.0, (0, 0, 0), 1.0)
        F2, *_ = read_snapshot(path)
        assert F2.n_x == 3
        np.testing.assert_array_equal(F2.values, F.values)
