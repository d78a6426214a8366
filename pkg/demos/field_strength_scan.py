"""How the log-temperature slope scales with the driving field.

For each field strength the run covers the same horizon |E| t = 30, and
the fitted slope alpha of T = a + alpha ln(1 + |E|t) is recorded. The
product alpha * |E| is (nearly) field-independent: stronger fields drag
the bulk out of the friction well faster, leaving proportionally less
collisional heating time. Uses a coarse grid so the scan finishes in
a couple of minutes.
"""

from runakin import SimConfig, fit_log_growth, run


def main():
    horizon = 30.0
    print(f"{'|E|':>6} {'alpha':>10} {'alpha*|E|':>10} {'R^2':>8}")
    products = []
    for e in (7.5, 15.0, 30.0):
        # same burn-in in units of |E| t, so every fit sees the same window
        cfg = SimConfig(extent=7.0, n=24, E=(e, 0.0, 0.0), T0=1.0,
                        t_end=horizon / e, t_burn=5.0 / e, cadence=0.025)
        records, _ = run(cfg, write_snapshots=False)
        fit = fit_log_growth(records, e, cfg.burn_in)
        alpha = fit.parameters["alpha"]
        products.append(alpha * e)
        print(f"{e:6.1f} {alpha:10.5f} {alpha * e:10.4f} {fit.r_squared:8.4f}")
    spread = (max(products) - min(products)) / (sum(products) / len(products))
    print(f"spread of alpha*|E|: {spread:.1%}")


if __name__ == "__main__":
    main()
