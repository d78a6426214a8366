"""Command-line entry point: run, verify, and sweep.

    runakin run <config>
    runakin verify <series.csv> <config>
    runakin sweep <config> --fields 10,20,40 [--jobs K]

Exit codes: 0 ok, 1 verification failure, 2 configuration error,
3 runtime abort. RUNAWAY_OUTPUT_DIR overrides output.dir.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import logging
import os
import sys
from dataclasses import replace

import numpy as np

from .config import parse_config, write_resolved
from .diagnostics import (DEFAULT_TOLERANCES, fit_log_growth, verdict_lines,
                          verify_series)
from .errors import ConfigurationError, SimulationAbort
from .integrator import SimConfig, run
from .io import atomic_write_text, read_series_csv, write_series_csv

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_CONFIG_ERROR = 2
EXIT_RUNTIME_ABORT = 3

OUTPUT_DIR_ENV = "RUNAWAY_OUTPUT_DIR"


def _resolve_output_dir(cfg: SimConfig) -> SimConfig:
    env = os.environ.get(OUTPUT_DIR_ENV)
    return replace(cfg, output_dir=env) if env else cfg


def _execute_run(cfg: SimConfig) -> str:
    """Run one simulation; returns the series.csv path."""
    os.makedirs(cfg.output_dir, exist_ok=True)
    write_resolved(os.path.join(cfg.output_dir, "config_resolved.txt"), cfg)
    records, _ = run(cfg)
    series_path = os.path.join(cfg.output_dir, "series.csv")
    write_series_csv(series_path, records)
    return series_path


def cmd_run(args) -> int:
    try:
        cfg = _resolve_output_dir(parse_config(args.config))
    except (ConfigurationError, OSError) as e:
        print(f"configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    try:
        path = _execute_run(cfg)
    except SimulationAbort as e:
        print(f"runtime abort: {e}", file=sys.stderr)
        return EXIT_RUNTIME_ABORT
    print(f"series written to {path}")
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        cfg = parse_config(args.config)
    except (ConfigurationError, OSError) as e:
        print(f"configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    try:
        records = read_series_csv(args.series)
    except (OSError, ValueError) as e:
        print(f"bad series file: {e}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    try:
        checks = verify_series(records, cfg.E, cfg.V0, cfg.burn_in,
                               cfg.tolerances)
    except ValueError as e:
        print(f"verification error: {e}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    verdict_path = os.path.join(os.path.dirname(os.path.abspath(args.series)),
                                "verdict.txt")
    atomic_write_text(verdict_path, "\n".join(verdict_lines(checks)) + "\n")
    ok = all(c.passed for c in checks)
    for c in checks:
        print(f"{c.name}: {'pass' if c.passed else 'FAIL'} "
              f"(measured {c.measured:.6g}, threshold {c.threshold})")
    print(f"verdict written to {verdict_path}")
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def _member_config(cfg: SimConfig, e_mag: float) -> SimConfig:
    """Sweep member: rescale |E| keeping direction and the product |E| t_end."""
    base = np.asarray(cfg.E, dtype=float)
    norm = float(np.linalg.norm(base))
    direction = base / norm if norm > 0 else np.array([1.0, 0.0, 0.0])
    horizon = norm * cfg.t_end if norm > 0 else cfg.t_end
    return replace(
        cfg,
        E=tuple(e_mag * direction),
        t_end=horizon / e_mag,
        output_dir=os.path.join(cfg.output_dir, f"sweep_E{e_mag:g}"),
    )


def _run_member(cfg: SimConfig):
    path = _execute_run(cfg)
    records = read_series_csv(path)
    fit = fit_log_growth(records, float(np.linalg.norm(cfg.E)), cfg.burn_in)
    return fit.parameters["a"], fit.parameters["alpha"], fit.r_squared


def cmd_sweep(args) -> int:
    try:
        cfg = _resolve_output_dir(parse_config(args.config))
        fields = [float(s) for s in args.fields.split(",") if s.strip()]
        if not fields:
            raise ConfigurationError("empty field list")
        if any(e <= 0 for e in fields):
            raise ConfigurationError(f"field strengths must be positive: {fields}")
    except (ConfigurationError, OSError, ValueError) as e:
        print(f"configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG_ERROR

    members = [_member_config(cfg, e) for e in fields]
    results = {}
    if args.jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=args.jobs) as ex:
            futures = {ex.submit(_run_member, m): e
                       for e, m in zip(fields, members)}
            for fut, e in futures.items():
                try:
                    results[e] = fut.result()
                except Exception as err:  # member failures are recorded, not fatal
                    results[e] = err
    else:
        for e, m in zip(fields, members):
            try:
                results[e] = _run_member(m)
            except Exception as err:
                results[e] = err

    lines = ["field,a,alpha,alpha_times_field,r2,status"]
    products = []
    failed = False
    for e in fields:
        res = results[e]
        if isinstance(res, Exception):
            failed = True
            lines.append(f"{e!r},,,,,failed: {res}")
            print(f"E={e}: FAILED ({res})", file=sys.stderr)
            continue
        a, alpha, r2 = res
        products.append(alpha * e)
        lines.append(f"{e!r},{a!r},{alpha!r},{alpha * e!r},{r2!r},ok")
        print(f"E={e}: alpha={alpha:.6g} alpha*E={alpha * e:.6g} r2={r2:.4f}")

    tol = dict(DEFAULT_TOLERANCES)
    tol.update(cfg.tolerances)
    spread = np.nan
    ok_spread = False
    if len(products) >= 2:
        spread = (max(products) - min(products)) / float(np.mean(products))
        ok_spread = spread <= tol["alpha_spread"]
        lines.append(f"# alpha*field spread={spread!r} "
                     f"threshold<={tol['alpha_spread']} "
                     f"{'pass' if ok_spread else 'fail'}")
        print(f"alpha*field spread {spread:.3f} "
              f"({'pass' if ok_spread else 'FAIL'}, threshold {tol['alpha_spread']})")
    os.makedirs(cfg.output_dir, exist_ok=True)
    atomic_write_text(os.path.join(cfg.output_dir, "sweep.csv"),
                      "\n".join(lines) + "\n")
    return EXIT_OK if (not failed and ok_spread) else EXIT_VERIFY_FAILED


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="runakin",
        description="velocity-space kinetic solver for runaway-electron dynamics")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one simulation")
    p_run.add_argument("config")
    p_run.set_defaults(func=cmd_run)

    p_ver = sub.add_parser("verify", help="check a series against the growth laws")
    p_ver.add_argument("series")
    p_ver.add_argument("config")
    p_ver.set_defaults(func=cmd_verify)

    p_sw = sub.add_parser("sweep", help="run a field-strength sweep")
    p_sw.add_argument("config")
    p_sw.add_argument("--fields", required=True,
                      help="comma-separated field strengths, e.g. 10,20,40")
    p_sw.add_argument("--jobs", type=int, default=1)
    p_sw.set_defaults(func=cmd_sweep)

    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
