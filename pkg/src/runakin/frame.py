"""Macroscopic state, its ODE system, and the moving-frame change of variables.

The bulk quantities obey

    V'(t) = E - 2 R(t),    T'(t) = (4/3) V(t) . R(t),    H'(t) = V(t),

and the frame field

    G(t, x, v) = T^{3/2} F(t, x + H, V + sqrt(T) v)

maps the drifting Maxwellian M_{V,T} to the unit Maxwellian mu. Its
evolution equation reads, in divergence-friendly form,

    d_t G = (T'/2T) div(v G) - 2 T^{-1/2} R . grad G
            + T^{-3/2} Q(G, G) + T^{-1} div( Pi(V + sqrt(T) v)/<.> grad G ),

with the dilation term combining the -T'/(2T) v drift and the (3/2) T'/T
growth of the raw chain rule.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.ndimage import map_coordinates

from .errors import DegenerateStateError
from .friction import spherical_diffusion
from .grid import Distribution, VelocityGrid
from .landau import collision_Q
from .stencils import spectral_divergence, spectral_gradient

logger = logging.getLogger(__name__)

# fraction of unit mass allowed to fall outside the source box on resampling
RESAMPLE_LOSS_THRESHOLD = 1e-6


@dataclass
class MacroState:
    """Bulk state (t, V, T) with the friction R and the drift integral H."""

    t: float
    V: np.ndarray
    T: float
    R: np.ndarray = field(default_factory=lambda: np.zeros(3))
    H: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self):
        self.V = np.asarray(self.V, dtype=float)
        self.R = np.asarray(self.R, dtype=float)
        self.H = np.asarray(self.H, dtype=float)
        if not self.T > 0:
            raise DegenerateStateError(f"temperature must stay positive, got {self.T}")


def macro_rhs(state: MacroState, R: np.ndarray, E: np.ndarray):
    """(dV, dT, dH) = (E - 2R, (4/3) V.R, V)."""
    R = np.asarray(R, dtype=float)
    E = np.asarray(E, dtype=float)
    dV = E - 2.0 * R
    dT = (4.0 / 3.0) * float(state.V @ R)
    return dV, dT, state.V.copy()


def _resample(values: np.ndarray, src: VelocityGrid, points) -> np.ndarray:
    """Tricubic sampling of a node field at physical velocity points."""
    coords = [
        (points[i] - (src.center[i] - src.extent)) / src.dv - 0.5
        for i in range(3)
    ]
    return map_coordinates(values, np.asarray(coords), order=3,
                           mode="constant", cval=0.0)


def _spatial_roll(values: np.ndarray, shift_cells: int) -> np.ndarray:
    return np.roll(values, -shift_cells, axis=0) if shift_cells else values


def to_frame(F: Distribution, state: MacroState,
             frame_grid: VelocityGrid | None = None,
             x_period: float | None = None) -> Distribution:
    """G = T^{3/2} F(x + H, V + sqrt(T) v) on the centered frame grid.

    The spatial shift by H is applied as a periodic index rotation by the
    nearest whole cell when the field is spatially resolved. Truncation
    (frame nodes mapping outside the source box) is detected through the
    mass defect and logged.
    """
    src = F.grid
    if frame_grid is None:
        frame_grid = VelocityGrid(src.extent, src.n)
    rt = np.sqrt(state.T)
    v = frame_grid.mesh()
    points = [state.V[i] + rt * v[i] for i in range(3)]
    vals = F.values
    if F.n_x > 1 and x_period:
        dx = x_period / F.n_x
        vals = _spatial_roll(vals, int(round(state.H[0] / dx)))
    out = np.empty((F.n_x,) + v[0].shape)
    for ix in range(F.n_x):
        out[ix] = state.T ** 1.5 * _resample(vals[ix], src, points)
    G = Distribution(frame_grid, out)
    # the T^{3/2} jacobian makes the discrete masses directly comparable
    lost = (float(F.values.mean(axis=0).sum()) * src.weight
            - float(out.mean(axis=0).sum()) * frame_grid.weight)
    if abs(lost) > RESAMPLE_LOSS_THRESHOLD:
        logger.warning("to_frame truncation: lost-mass estimate %.3e", lost)
    return G


def from_frame(G: Distribution, state: MacroState,
               lab_grid: VelocityGrid | None = None,
               x_period: float | None = None) -> Distribution:
    """F(v) = T^{-3/2} G((v - V)/sqrt(T)), inverse resampling."""
    src = G.grid
    if lab_grid is None:
        lab_grid = src
    rt = np.sqrt(state.T)
    v = lab_grid.mesh()
    points = [(v[i] - state.V[i]) / rt for i in range(3)]
    out = np.empty((G.n_x,) + v[0].shape)
    for ix in range(G.n_x):
        out[ix] = state.T ** -1.5 * _resample(G.values[ix], src, points)
    if G.n_x > 1 and x_period:
        dx = x_period / G.n_x
        out = _spatial_roll(out, -int(round(state.H[0] / dx)))
    F = Distribution(lab_grid, out)
    lost = (float(G.values.mean(axis=0).sum()) * src.weight
            - float(out.mean(axis=0).sum()) * lab_grid.weight)
    if abs(lost) > RESAMPLE_LOSS_THRESHOLD:
        logger.warning("from_frame truncation: lost-mass estimate %.3e", lost)
    return F


def transformed_rhs(G: Distribution, state: MacroState,
                    R: np.ndarray, T_prime: float) -> Distribution:
    """Right-hand side of the frame equation at fixed (V, T, R, T').

    Dilation and drift terms are evaluated spectrally (the frame field is
    centered and decays inside the box), so their node sums vanish exactly;
    the collision and diffusion blocks are conservative by construction.
    """
    grid = G.grid
    T = state.T
    R = np.asarray(R, dtype=float)
    tau = T_prime / T
    q = collision_Q(G, G)
    sd = spherical_diffusion(G, shift=(state.V, T), fitted=False)
    out = np.empty_like(G.values)
    v = grid.mesh()
    for ix in range(G.n_x):
        g = G.values[ix]
        dil = 0.5 * tau * spectral_divergence([v[0] * g, v[1] * g, v[2] * g],
                                              grid.dv)
        dg = spectral_gradient(g, grid.dv)
        drift = -2.0 / np.sqrt(T) * (R[0] * dg[0] + R[1] * dg[1] + R[2] * dg[2])
        # sd already carries the 1/T of the frame diffusion term
        out[ix] = dil + drift + T ** -1.5 * q.values[ix] + sd.values[ix]
    return Distribution(grid, out)
