"""The reference runaway scenario, end to end.

A unit Maxwellian in a constant field E = (20, 0, 0) is driven for
|E| t = 100. The bulk velocity tracks Et (friction becomes negligible),
the temperature grows like a + alpha ln(1 + |E| t), the friction decays
like (1 + |E|t/4)^-2, and the rescaled profile collapses onto the unit
Maxwellian. Writes series.csv/verdict.txt next to this script's output
directory. Runtime: a few minutes.
"""

import os

import numpy as np

from runakin import (SimConfig, fit_friction_decay, fit_log_growth, run,
                     verdict_lines, verify_series, write_series_csv)

OUT = os.path.join(os.path.dirname(__file__), "out", "reference")


def main():
    cfg = SimConfig(extent=8.0, n=32, E=(20.0, 0.0, 0.0), T0=1.0, t_end=5.0,
                    output_dir=OUT)
    records, state = run(cfg)
    os.makedirs(OUT, exist_ok=True)
    write_series_csv(os.path.join(OUT, "series.csv"), records)

    r = records[-1]
    print(f"t={r.t:g}: V={r.V[0]:.3f} (Et={cfg.E[0] * r.t:g}) "
          f"T={r.T:.4f} |R|={np.linalg.norm(r.R):.2e} dist={r.dist:.4f}")

    growth = fit_log_growth(records, cfg.e_mag, cfg.burn_in)
    decay = fit_friction_decay(records, cfg.e_mag, cfg.burn_in)
    print(f"temperature fit: T = {growth.parameters['a']:.4f} "
          f"+ {growth.parameters['alpha']:.4f} ln(1+|E|t), "
          f"R^2 = {growth.r_squared:.5f}")
    print(f"friction fit:  |R| = {decay.parameters['C']:.4f} "
          f"(1+|E|t/4)^-{decay.parameters['p']:.3f}")

    checks = verify_series(records, cfg.E, cfg.V0, cfg.burn_in)
    for line in verdict_lines(checks):
        print(line)


if __name__ == "__main__":
    main()
