"""Plain key=value configuration files and their round-trippable echo.

One `key=value` pair per line, `#` comments, blank lines ignored. Unknown
keys are rejected with the offending line number, as are missing required
keys and unparsable values.
"""

from __future__ import annotations

import numpy as np

from .diagnostics import DEFAULT_TOLERANCES
from .errors import ConfigurationError
from .integrator import SimConfig

REQUIRED_KEYS = ("grid.L", "grid.N", "field.Ex", "field.Ey", "field.Ez",
                 "init.T", "time.t_end")

OPTIONAL_KEYS = ("grid.Nx", "grid.period", "field.sign",
                 "init.Vx", "init.Vy", "init.Vz", "init.perturbation",
                 "init.seed", "mode", "time.dt", "time.safety",
                 "output.cadence", "output.dir", "output.snapshots",
                 "fit.t_burn")

TOLERANCE_PREFIX = "tolerances."


def _known(key: str) -> bool:
    if key in REQUIRED_KEYS or key in OPTIONAL_KEYS:
        return True
    return (key.startswith(TOLERANCE_PREFIX)
            and key[len(TOLERANCE_PREFIX):] in DEFAULT_TOLERANCES)


def _read_pairs(path: str):
    pairs = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigurationError(
                    f"malformed line {lineno} in {path!r}: {raw.strip()!r}")
            key, value = (s.strip() for s in line.split("=", 1))
            if not _known(key):
                raise ConfigurationError(f"unknown key {key} at line {lineno}")
            if key in pairs:
                raise ConfigurationError(f"duplicate key {key} at line {lineno}")
            pairs[key] = (value, lineno)
    return pairs


def _take(pairs, key, cast, default=None):
    if key not in pairs:
        return default
    value, lineno = pairs.pop(key)
    try:
        return cast(value)
    except (ValueError, TypeError) as e:
        raise ConfigurationError(
            f"bad value for {key} at line {lineno}: {value!r} ({e})") from e


def parse_config(path: str) -> SimConfig:
    pairs = _read_pairs(path)
    for key in REQUIRED_KEYS:
        if key not in pairs:
            raise ConfigurationError(f"missing required key {key} in {path!r}")

    def dt_cast(s):
        return None if s == "auto" else float(s)

    def snapshots_cast(s):
        return tuple(float(x) for x in s.split(",") if x.strip()) if s else ()

    cfg = SimConfig(
        extent=_take(pairs, "grid.L", float),
        n=_take(pairs, "grid.N", int),
        n_x=_take(pairs, "grid.Nx", int, 1),
        x_period=_take(pairs, "grid.period", float, 1.0),
        E=(_take(pairs, "field.Ex", float),
           _take(pairs, "field.Ey", float),
           _take(pairs, "field.Ez", float)),
        sign_convention=_take(pairs, "field.sign", str, "lhs_plus"),
        V0=(_take(pairs, "init.Vx", float, 0.0),
            _take(pairs, "init.Vy", float, 0.0),
            _take(pairs, "init.Vz", float, 0.0)),
        T0=_take(pairs, "init.T", float),
        perturbation=_take(pairs, "init.perturbation", str, "none"),
        seed=_take(pairs, "init.seed", int, 0),
        mode=_take(pairs, "mode", str, "lab"),
        t_end=_take(pairs, "time.t_end", float),
        dt=_take(pairs, "time.dt", dt_cast, None),
        safety=_take(pairs, "time.safety", float, 0.4),
        cadence=_take(pairs, "output.cadence", float, 0.05),
        output_dir=_take(pairs, "output.dir", str, "."),
        snapshots=_take(pairs, "output.snapshots", snapshots_cast, ()),
        t_burn=_take(pairs, "fit.t_burn", float, None),
        tolerances={k[len(TOLERANCE_PREFIX):]: float(v)
                    for k, (v, _) in pairs.items()},
    )
    # grid validation happens on first use; trigger it now for fail-fast
    from .grid import VelocityGrid
    VelocityGrid(cfg.extent, cfg.n, cfg.V0)
    return cfg


def _fmt(x) -> str:
    return repr(float(x))


def resolved_lines(cfg: SimConfig) -> list:
    """Echo of the fully resolved configuration; re-parses to the same SimConfig."""
    lines = [
        f"grid.L={_fmt(cfg.extent)}",
        f"grid.N={cfg.n}",
        f"grid.Nx={cfg.n_x}",
        f"grid.period={_fmt(cfg.x_period)}",
        f"field.Ex={_fmt(cfg.E[0])}",
        f"field.Ey={_fmt(cfg.E[1])}",
        f"field.Ez={_fmt(cfg.E[2])}",
        f"field.sign={cfg.sign_convention}",
        f"init.Vx={_fmt(cfg.V0[0])}",
        f"init.Vy={_fmt(cfg.V0[1])}",
        f"init.Vz={_fmt(cfg.V0[2])}",
        f"init.T={_fmt(cfg.T0)}",
        f"init.perturbation={cfg.perturbation}",
        f"init.seed={cfg.seed}",
        f"mode={cfg.mode}",
        f"time.t_end={_fmt(cfg.t_end)}",
        f"time.dt={'auto' if cfg.dt is None else _fmt(cfg.dt)}",
        f"time.safety={_fmt(cfg.safety)}",
        f"output.cadence={_fmt(cfg.cadence)}",
        f"output.dir={cfg.output_dir}",
        f"output.snapshots={','.join(_fmt(s) for s in cfg.snapshots)}",
    ]
    if cfg.t_burn is not None:
        lines.append(f"fit.t_burn={_fmt(cfg.t_burn)}")
    for k in sorted(cfg.tolerances):
        lines.append(f"{TOLERANCE_PREFIX}{k}={_fmt(cfg.tolerances[k])}")
    return lines


def write_resolved(path: str, cfg: SimConfig):
    from .io import atomic_write_text
    atomic_write_text(path, "\n".join(resolved_lines(cfg)) + "\n")
