"""Post-processing: growth-law fits, friction decay, and profile convergence.

The long-time behavior under a constant field E is characterized by

    V(t) ~ V(0) + E t                      (linear momentum growth)
    T(t) ~ a + alpha ln(1 + |E| t)         (logarithmic heating)
    |R(t)| ~ C (1 + |E| t / 4)^(-2)        (friction decay)

plus convergence of the rescaled profile T^{3/2} F(V + sqrt(T) v) to the
unit Maxwellian in L^2. The fitters here are pure least-squares utilities;
verify_series turns a time series into a pass/fail verdict table.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .frame import MacroState
from .grid import Distribution

DEFAULT_TOLERANCES = {
    "momentum_deviation": 0.05,   # sup|V - V0 - Et| / (|E| t_end)
    "fit_r2": 0.95,               # minimum R^2 of the log-growth fit
    "friction_p_low": 1.7,        # admissible friction decay exponent band
    "friction_p_high": 2.3,
    "energy_ledger": 1e-2,        # relative defect of d/dt(|V|^2+3T) = 2E.V
    "distance_factor": 0.5,       # d(t_end) < factor * d(t_burn)
    "mass_drift": 1e-4,           # relative mass change over the run
    "alpha_spread": 0.30,         # sweep: spread of alpha*|E| across fields
}

MIN_FIT_RECORDS = 20


@dataclass(frozen=True)
class TimeSeriesRecord:
    """One output-cadence row of a simulation."""

    t: float
    V: tuple
    T: float
    R: tuple
    mass: float
    loss: float
    ratio: float   # |V| / sqrt(T)
    dist: float    # L2 distance of the rescaled profile to mu


@dataclass(frozen=True)
class FitResult:
    parameters: dict
    r_squared: float
    window: tuple
    note: str = ""


def _columns(series):
    t = np.array([r.t for r in series])
    V = np.array([r.V for r in series])
    T = np.array([r.T for r in series])
    R = np.array([r.R for r in series])
    return t, V, T, R


def _window(series, t_burn: float):
    sel = [r for r in series if r.t >= t_burn - 1e-12]
    if len(sel) < MIN_FIT_RECORDS:
        raise ValueError(
            f"degenerate fit window: {len(sel)} records at t >= {t_burn}, "
            f"need {MIN_FIT_RECORDS}")
    return sel


def fit_log_growth(series, e_mag: float, t_burn: float = 0.0) -> FitResult:
    """Least-squares (a, alpha) for T(t) = a + alpha ln(1 + |E| t)."""
    sel = _window(series, t_burn)
    t, _, T, _ = _columns(sel)
    X = np.vstack([np.ones_like(t), np.log1p(e_mag * t)]).T
    coef, *_ = np.linalg.lstsq(X, T, rcond=None)
    pred = X @ coef
    ss_res = float(((T - pred) ** 2).sum())
    ss_tot = float(((T - T.mean()) ** 2).sum())
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    a, alpha = float(coef[0]), float(coef[1])
    note = "no growth" if abs(alpha) < 1e-6 * max(abs(a), 1.0) else ""
    return FitResult({"a": a, "alpha": alpha}, max(0.0, min(1.0, r2)),
                     (float(t[0]), float(t[-1])), note)


def fit_linear_momentum(series, E, V0, t_burn: float = 0.0) -> FitResult:
    """sup_t |V(t) - V0 - E t| over the window, and its |E| t_end-normalized ratio."""
    sel = _window(series, t_burn)
    t, V, _, _ = _columns(sel)
    E = np.asarray(E, dtype=float)
    V0 = np.asarray(V0, dtype=float)
    dev = np.linalg.norm(V - V0[None, :] - t[:, None] * E[None, :], axis=1)
    sup = float(dev.max())
    t_end = float(t[-1])
    e_mag = float(np.linalg.norm(E))
    norm = sup / (e_mag * t_end) if e_mag * t_end > 0 else np.inf
    return FitResult({"sup_deviation": sup, "normalized": norm}, 1.0,
                     (float(t[0]), t_end))


def fit_friction_decay(series, e_mag: float, t_burn: float = 0.0) -> FitResult:
    """Log-log fit |R(t)| = C (1 + |E| t / 4)^(-p)."""
    sel = _window(series, t_burn)
    t, _, _, R = _columns(sel)
    mag = np.linalg.norm(R, axis=1)
    if not np.all(mag > 0):
        raise ValueError("friction magnitude vanishes inside the fit window")
    x = np.log1p(e_mag * t / 4.0)
    y = np.log(mag)
    X = np.vstack([np.ones_like(x), x]).T
    coef, *_ = np.linalg.lstsq(X, y, rcond=None)
    pred = X @ coef
    ss_tot = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 - float(((y - pred) ** 2).sum()) / ss_tot if ss_tot > 0 else 1.0
    return FitResult({"C": float(np.exp(coef[0])), "p": float(-coef[1])},
                     max(0.0, min(1.0, r2)), (float(t[0]), float(t[-1])))


def frame_distance(F: Distribution, state: MacroState) -> float:
    """d = || T^{3/2} F(V + sqrt(T) v) - mu ||_{L^2_v}.

    Evaluated by exact change of variables on F's own grid (no resampling):
    d^2 = T^{-3/2} sum_w ( T^{3/2} F(w) - mu((w - V)/sqrt(T)) )^2 dw^3.
    """
    grid = F.grid
    rt = np.sqrt(state.T)
    w = grid.mesh()
    r2 = sum(((w[i] - state.V[i]) / rt) ** 2 for i in range(3))
    mu = (2.0 * np.pi) ** -1.5 * np.exp(-r2 / 2.0)
    f = F.velocity_average()
    diff = state.T ** 1.5 * f - mu
    return float(np.sqrt((diff * diff).sum() * grid.weight / state.T ** 1.5))


@dataclass(frozen=True)
class Check:
    name: str
    measured: float
    threshold: str
    passed: bool
    extras: dict = field(default_factory=dict)


def verify_series(series, E, V0, t_burn: float,
                  tolerances: dict | None = None):
    """Run every series-level acceptance check; returns a list of Checks."""
    tol = dict(DEFAULT_TOLERANCES)
    if tolerances:
        tol.update(tolerances)
    E = np.asarray(E, dtype=float)
    e_mag = float(np.linalg.norm(E))
    checks = []

    t, V, T, _ = _columns(series)
    t_end = float(t[-1])
    post = _window(series, t_burn)
    tp, Vp, Tp, _ = _columns(post)

    mom = fit_linear_momentum(series, E, V0, t_burn)
    checks.append(Check("momentum_tracking", mom.parameters["normalized"],
                        f"<{tol['momentum_deviation']}",
                        mom.parameters["normalized"] < tol["momentum_deviation"],
                        {"sup_deviation": mom.parameters["sup_deviation"]}))

    growth = fit_log_growth(series, e_mag, t_burn)
    checks.append(Check("temperature_fit_r2", growth.r_squared,
                        f">={tol['fit_r2']}",
                        growth.r_squared >= tol["fit_r2"],
                        {"a": growth.parameters["a"],
                         "alpha": growth.parameters["alpha"]}))
    checks.append(Check("temperature_growth_alpha", growth.parameters["alpha"],
                        ">0", growth.parameters["alpha"] > 0))

    fr = fit_friction_decay(series, e_mag, t_burn)
    p = fr.parameters["p"]
    checks.append(Check(
        "friction_exponent", p,
        f"[{tol['friction_p_low']},{tol['friction_p_high']}]",
        tol["friction_p_low"] <= p <= tol["friction_p_high"],
        {"C": fr.parameters["C"]}))

    ratio = np.array([r.ratio for r in post])
    min_dratio = float(np.diff(ratio).min()) if len(ratio) > 1 else np.nan
    checks.append(Check("ratio_increasing", min_dratio, ">0",
                        bool(min_dratio > 0)))

    min_dT = float(np.diff(Tp).min()) if len(Tp) > 1 else np.nan
    checks.append(Check("temperature_monotone", min_dT, ">=-1e-12",
                        bool(min_dT >= -1e-12)))

    d_burn = post[0].dist
    d_end = post[-1].dist
    rel = d_end / d_burn if d_burn > 0 else np.inf
    checks.append(Check("frame_distance_decay", rel,
                        f"<{tol['distance_factor']}",
                        rel < tol["distance_factor"],
                        {"d_burn": d_burn, "d_end": d_end}))

    # centered-difference ledger d/dt(|V|^2 + 3T) vs 2 E.V at interior records
    e_tot = (V * V).sum(axis=1) + 3.0 * T
    dts = t[2:] - t[:-2]
    ledger = (e_tot[2:] - e_tot[:-2]) / dts
    drive = 2.0 * (V[1:-1] @ E)
    sel = t[1:-1] >= t_burn
    defect = float(np.max(np.abs(ledger[sel] - drive[sel]) / np.abs(drive[sel])))
    checks.append(Check("energy_ledger", defect, f"<{tol['energy_ledger']}",
                        defect < tol["energy_ledger"]))

    mass = np.array([r.mass for r in series])
    drift = float(np.max(np.abs(mass - mass[0])) / abs(mass[0]))
    checks.append(Check("mass_drift", drift, f"<{tol['mass_drift']}",
                        drift < tol["mass_drift"]))
    return checks


def verdict_lines(checks) -> list:
    """Render checks as key=value lines; overall verdict last."""
    lines = []
    for c in checks:
        lines.append(f"{c.name}.measured={c.measured!r}")
        lines.append(f"{c.name}.threshold={c.threshold}")
        lines.append(f"{c.name}.status={'pass' if c.passed else 'fail'}")
        for k, v in c.extras.items():
            lines.append(f"{c.name}.{k}={v!r}")
    ok = all(c.passed for c in checks)
    lines.append(f"overall={'pass' if ok else 'fail'}")
    return lines
