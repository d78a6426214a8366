import os

import numpy as np
import pytest

from runakin.cli import (EXIT_CONFIG_ERROR, EXIT_OK, EXIT_VERIFY_FAILED,
                         OUTPUT_DIR_ENV, _member_config, main)
from runakin.config import parse_config
from runakin.diagnostics import TimeSeriesRecord
from runakin.io import read_series_csv, write_series_csv

TINY = """\
grid.L=7
grid.N=12
field.Ex=10
field.Ey=0
field.Ez=0
init.T=1
time.t_end=0.1
output.cadence=0.05
"""


def write_cfg(tmp_path, text=TINY, name="run.cfg"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def lawful_series(e_mag=20.0, t_end=5.0, cadence=0.05):
    rows = []
    for k in range(int(round(t_end / cadence)) + 1):
        t = k * cadence
        T = 1.0 + 0.07 * np.log1p(e_mag * t)
        rows.append(TimeSeriesRecord(
            t=t, V=(e_mag * t, 0.0, 0.0), T=T,
            R=(0.12 * (1 + e_mag * t / 4.0) ** -2.0, 0.0, 0.0),
            mass=1.0, loss=0.0, ratio=e_mag * t / np.sqrt(T),
            dist=0.01 * np.exp(-0.5 * t)))
    return rows


LAWFUL_CFG = TINY.replace("time.t_end=0.1", "time.t_end=5").replace(
    "field.Ex=10", "field.Ex=20")


class TestRunCommand:
    def test_run_writes_outputs(self, tmp_path):
        cfg = write_cfg(tmp_path, TINY + f"output.dir={tmp_path}/out\n")
        assert main(["run", cfg]) == EXIT_OK
        series = read_series_csv(str(tmp_path / "out" / "series.csv"))
        assert len(series) == 3  # floor(t_end/cadence) + 1
        assert (tmp_path / "out" / "config_resolved.txt").exists()

    def test_env_overrides_output_dir(self, tmp_path, monkeypatch):
        monkeypatch.setenv(OUTPUT_DIR_ENV, str(tmp_path / "env_out"))
        cfg = write_cfg(tmp_path, TINY + f"output.dir={tmp_path}/ignored\n")
        assert main(["run", cfg]) == EXIT_OK
        assert (tmp_path / "env_out" / "series.csv").exists()
        assert not (tmp_path / "ignored").exists()

    def test_bad_config_exit_code(self, tmp_path):
        cfg = write_cfg(tmp_path, TINY + "grid.bogus=1\n")
        assert main(["run", cfg]) == EXIT_CONFIG_ERROR

    def test_missing_config_exit_code(self, tmp_path):
        assert main(["run", str(tmp_path / "nope.cfg")]) == EXIT_CONFIG_ERROR


class TestVerifyCommand:
    def test_lawful_series_passes(self, tmp_path, capsys):
        series = str(tmp_path / "series.csv")
        write_series_csv(series, lawful_series())
        cfg = write_cfg(tmp_path, LAWFUL_CFG)
        assert main(["verify", series, cfg]) == EXIT_OK
        out = capsys.readouterr().out
        assert "momentum_tracking: pass" in out
        verdict = (tmp_path / "verdict.txt").read_text().splitlines()
        assert verdict[-1] == "overall=pass"

    def test_tampered_temperature_fails(self, tmp_path):
        from dataclasses import replace
        rows = lawful_series()
        rows[-1] = replace(rows[-1], T=rows[-2].T - 0.2)
        series = str(tmp_path / "series.csv")
        write_series_csv(series, rows)
        cfg = write_cfg(tmp_path, LAWFUL_CFG)
        assert main(["verify", series, cfg]) == EXIT_VERIFY_FAILED
        assert "temperature_monotone.status=fail" in \
            (tmp_path / "verdict.txt").read_text()

    def test_malformed_series_exit_code(self, tmp_path):
        series = tmp_path / "series.csv"
        series.write_text("not,a,series\n1,2,3\n")
        cfg = write_cfg(tmp_path, LAWFUL_CFG)
        assert main(["verify", str(series), cfg]) == EXIT_CONFIG_ERROR

    def test_missing_series_exit_code(self, tmp_path):
        cfg = write_cfg(tmp_path, LAWFUL_CFG)
        assert main(["verify", str(tmp_path / "nope.csv"), cfg]) == \
            EXIT_CONFIG_ERROR


class TestSweep:
    def test_member_config_keeps_horizon(self, tmp_path):
        cfg = parse_config(write_cfg(tmp_path, LAWFUL_CFG))
        m = _member_config(cfg, 40.0)
        assert m.E == (40.0, 0.0, 0.0)
        assert m.E[0] * m.t_end == pytest.approx(cfg.E[0] * cfg.t_end)
        assert m.output_dir.endswith("sweep_E40")

    def test_bad_field_list(self, tmp_path):
        cfg = write_cfg(tmp_path, TINY)
        assert main(["sweep", cfg, "--fields=-5,10"]) == EXIT_CONFIG_ERROR
        assert main(["sweep", cfg, "--fields="]) == EXIT_CONFIG_ERROR

    def test_small_sweep_products_and_csv(self, tmp_path):
        # |E| t_end = 24 keeps >= 20 post-burn records for the fast member
        text = TINY.replace("time.t_end=0.1", "time.t_end=2.4") \
            + f"output.dir={tmp_path}/sw\nfit.t_burn=0.2\n"
        cfg = write_cfg(tmp_path, text)
        rc = main(["sweep", cfg, "--fields", "10,20"])
        lines = (tmp_path / "sw" / "sweep.csv").read_text().splitlines()
        assert lines[0] == "field,a,alpha,alpha_times_field,r2,status"
        body = [ln for ln in lines[1:] if not ln.startswith("#")]
        assert len(body) == 2 and all(ln.endswith(",ok") for ln in body)
        assert (tmp_path / "sw" / "sweep_E10" / "series.csv").exists()
        assert (tmp_path / "sw" / "sweep_E20" / "series.csv").exists()
        spread_line = [ln for ln in lines if ln.startswith("#")][0]
        # exit code mirrors the recorded spread verdict
        assert rc == (EXIT_OK if spread_line.endswith("pass")
                      else EXIT_VERIFY_FAILED)
