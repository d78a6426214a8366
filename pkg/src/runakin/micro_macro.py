"""Micro-macro projection and weighted velocity-space norms.

The projection P maps onto span{mu^(1/2), v mu^(1/2), (|v|^2 - 3) mu^(1/2)}:

    P f = [a + b.v + c(|v|^2 - 3)] mu^(1/2)

with a = <f, mu^(1/2)>, b = <f, v mu^(1/2)>, c = <f, (|v|^2 - 3) mu^(1/2)>/6.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import Distribution, VelocityGrid
from .stencils import diff_centered


@dataclass(frozen=True)
class MacroCoefficients:
    a: float
    b: np.ndarray
    c: float


def _sqrt_mu(grid: VelocityGrid) -> np.ndarray:
    r2 = grid.radius2()
    return (2.0 * np.pi) ** -0.75 * np.exp(-r2 / 4.0)


def project_P(f: Distribution):
    """Macroscopic coefficients and the reconstructed fluid part Pf.

    Applied per spatial cell; coefficients are returned for the spatial
    average (the homogeneous case has a single cell anyway).
    """
    grid = f.grid
    w = grid.weight
    sm = _sqrt_mu(grid)
    v1, v2, v3 = grid.mesh()
    r2 = v1 * v1 + v2 * v2 + v3 * v3

    out = np.empty_like(f.values)
    coeffs = None
    for ix in range(f.n_x):
        g = f.values[ix]
        a = float((g * sm).sum()) * w
        b = np.array([float((g * v1 * sm).sum()),
                      float((g * v2 * sm).sum()),
                      float((g * v3 * sm).sum())]) * w
        c = float((g * (r2 - 3.0) * sm).sum()) * w / 6.0
        out[ix] = (a + b[0] * v1 + b[1] * v2 + b[2] * v3 + c * (r2 - 3.0)) * sm
        if ix == 0:
            coeffs = MacroCoefficients(a, b, c)
    return coeffs, Distribution(grid, out)


def weighted_norm(f: Distribution, k: float, kind: str = "L2_k") -> float:
    """Discrete <v>-weighted norms.

    L2_k:  || <v>^k f ||_{L^2}
    H1_k:  (||f||^2_{L2_k} + ||grad f||^2_{L2_k})^(1/2)
    D1_k:  (||f||^2_{H1_{k-3/2}} + ||v x grad f||^2_{L2_{k-3/2}})^(1/2)

    The rotational term stands in for the (-Laplace_{S^2})^{1/2} seminorm:
    same scaling in <v>, local, and zero on radial profiles.
    """
    grid = f.grid
    w = grid.weight
    v1, v2, v3 = grid.mesh()
    r2 = v1 * v1 + v2 * v2 + v3 * v3
    jb2 = 1.0 + r2  # <v>^2

    def l2k2(g, kk):
        return float((jb2 ** kk * g * g).sum()) * w

    total = 0.0
    for ix in range(f.n_x):
        g = f.values[ix]
        if kind == "L2_k":
            total += l2k2(g, k)
            continue
        d1 = diff_centered(g, grid.dv, 0)
        d2 = diff_centered(g, grid.dv, 1)
        d3 = diff_centered(g, grid.dv, 2)
        if kind == "H1_k":
            total += l2k2(g, k) + l2k2(d1, k) + l2k2(d2, k) + l2k2(d3, k)
        elif kind == "D1_k":
            km = k - 1.5
            total += l2k2(g, km) + l2k2(d1, km) + l2k2(d2, km) + l2k2(d3, km)
            rot1 = v2 * d3 - v3 * d2
            rot2 = v3 * d1 - v1 * d3
            rot3 = v1 * d2 - v2 * d1
            total += l2k2(rot1, km) + l2k2(rot2, km) + l2k2(rot3, km)
        else:
            raise ValueError(f"unknown norm kind {kind!r}")
    return float(np.sqrt(total / f.n_x))


def l2_distance(f: Distribution, g: Distribution) -> float:
    """Plain L^2 distance of the spatially averaged profiles."""
    d = f.velocity_average() - g.velocity_average()
    return float(np.sqrt((d * d).sum() * f.grid.weight))
