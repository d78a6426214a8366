"""Cell-centered 3-D velocity grid, Maxwellians and discrete moments.

The grid spans [c_i - L, c_i + L) per axis with N cells of width dv = 2L/N.
Nodes sit at cell centers, so with even N (and a center that is a multiple
of dv) the origin v = 0 is never a node and |v|^-1-type integrands stay
finite everywhere.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, DegenerateStateError, GridMismatchError

logger = logging.getLogger(__name__)

INV_SQRT_2PI_CUBED = (2.0 * np.pi) ** -1.5

# Fraction of unit mass allowed outside the box before maxwellian() warns.
DEFAULT_TAIL_THRESHOLD = 1e-8


@dataclass(frozen=True)
class VelocityGrid:
    """Truncated cell-centered velocity lattice with midpoint quadrature.

    extent:  half-width L of the box per axis (before the center offset)
    n:       cells per axis, even
    center:  box center, each component a multiple of dv (keeps the node
             lattice origin-free under recentering)
    """

    extent: float
    n: int
    center: tuple = (0.0, 0.0, 0.0)

    def __post_init__(self):
        if self.n % 2 != 0 or self.n < 8:
            raise ConfigurationError(f"points_per_axis must be even and >= 8, got {self.n}")
        if not self.extent > 0:
            raise ConfigurationError(f"grid extent must be positive, got {self.extent}")
        # |v|^-1-type integrands require clearance between the origin and the
        # nearest node; cell-centered even-N boxes centered at 0 give dv/2
        # per axis, and a translated box must not erode that below dv/4.
        dv = self.dv
        r2 = 0.0
        for c in self.center:
            u = (0.0 - (c - self.extent)) / dv - 0.5
            j = min(max(round(u), 0), self.n - 1)
            r2 += ((u - j) * dv) ** 2
        if r2 < (0.25 * dv) ** 2:
            raise ConfigurationError(
                f"grid center {self.center} places a node within dv/4 of the origin"
            )

    @property
    def dv(self) -> float:
        return 2.0 * self.extent / self.n

    @property
    def weight(self) -> float:
        """Quadrature weight per node, dv^3."""
        return self.dv ** 3

    def axis(self, i: int) -> np.ndarray:
        """Cell centers along axis i (row-major ordering, z fastest)."""
        return self.center[i] - self.extent + (np.arange(self.n) + 0.5) * self.dv

    def mesh(self):
        """(v1, v2, v3) node coordinate arrays, each shaped (n, n, n)."""
        return np.meshgrid(self.axis(0), self.axis(1), self.axis(2), indexing="ij")

    def radius2(self) -> np.ndarray:
        v1, v2, v3 = self.mesh()
        return v1 * v1 + v2 * v2 + v3 * v3

    def shifted(self, cells) -> "VelocityGrid":
        """Same lattice translated by an integer number of cells per axis."""
        c = tuple(self.center[i] + int(cells[i]) * self.dv for i in range(3))
        return VelocityGrid(self.extent, self.n, c)

    def same_lattice(self, other: "VelocityGrid") -> bool:
        return self.n == other.n and math.isclose(self.extent, other.extent) and all(
            math.isclose(a, b) for a, b in zip(self.center, other.center)
        )


def build_grid(extent: float, n: int, center=(0.0, 0.0, 0.0)) -> VelocityGrid:
    """Validated constructor; rejects odd N and non-positive L."""
    return VelocityGrid(float(extent), int(n), tuple(float(c) for c in center))


@dataclass
class Distribution:
    """Scalar field over (spatial cells x) velocity nodes.

    values has shape (n_x, n, n, n); spatially homogeneous runs use n_x = 1.
    Physical distributions are nonnegative: violations are warned about,
    not rejected, since transient undershoots are part of the discretization.
    """

    grid: VelocityGrid
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.ndim == 3:
            self.values = self.values[None, ...]
        n = self.grid.n
        if self.values.shape[1:] != (n, n, n):
            raise GridMismatchError(
                f"values shape {self.values.shape} does not match grid n={n}"
            )
        if not np.all(np.isfinite(self.values)):
            raise ValueError("distribution contains non-finite values")

    @property
    def n_x(self) -> int:
        return self.values.shape[0]

    def velocity_average(self) -> np.ndarray:
        """Spatial average over cells; the velocity-space density."""
        return self.values.mean(axis=0)

    def warn_if_negative(self, where=""):
        lo = self.values.min()
        if lo < 0 and abs(lo) > 1e-12 * max(self.values.max(), 1e-300):
            logger.warning("distribution negative (min %.3e) %s", lo, where)

    def copy(self) -> "Distribution":
        return Distribution(self.grid, self.values.copy())


def check_same_grid(f: Distribution, g: Distribution):
    if not f.grid.same_lattice(g.grid):
        raise GridMismatchError("distributions live on different grids")


@dataclass(frozen=True)
class MomentSet:
    """Mass, momentum and energy quadratures plus derived bulk quantities.

    T = (energy - rho |V|^2) / (3 rho), the centered second moment over 3.
    """

    mass: float
    momentum: np.ndarray
    energy: float

    @property
    def bulk(self) -> np.ndarray:
        if self.mass <= 0:
            raise DegenerateStateError(f"bulk velocity undefined for mass {self.mass}")
        return self.momentum / self.mass

    @property
    def temperature(self) -> float:
        if self.mass <= 0:
            raise DegenerateStateError(f"temperature undefined for mass {self.mass}")
        V = self.momentum / self.mass
        return (self.energy - self.mass * float(V @ V)) / (3.0 * self.mass)


def maxwellian(grid: VelocityGrid, V, T: float,
               tail_threshold: float = DEFAULT_TAIL_THRESHOLD) -> Distribution:
    """Sample M_{V,T}(v) = (2 pi T)^{-3/2} exp(-|v-V|^2 / 2T) at the nodes.

    Warns (non-fatally) when the Gaussian tail mass outside the box exceeds
    tail_threshold, estimated per axis from the error function.
    """
    if not T > 0:
        raise ConfigurationError(f"Maxwellian temperature must be positive, got {T}")
    V = np.asarray(V, dtype=float)
    tail = 0.0
    for i in range(3):
        lo = grid.center[i] - grid.extent
        hi = grid.center[i] + grid.extent
        s = math.sqrt(2.0 * T)
        inside = 0.5 * (math.erf((hi - V[i]) / s) - math.erf((lo - V[i]) / s))
        tail = max(tail, 1.0 - inside)
    if tail > tail_threshold:
        logger.warning(
            "maxwellian truncation: tail mass %.3e outside grid (V=%s, T=%.3g)",
            tail, V, T,
        )
    v1, v2, v3 = grid.mesh()
    r2 = (v1 - V[0]) ** 2 + (v2 - V[1]) ** 2 + (v3 - V[2]) ** 2
    vals = (2.0 * np.pi * T) ** -1.5 * np.exp(-r2 / (2.0 * T))
    return Distribution(grid, vals)


def unit_maxwellian(grid: VelocityGrid) -> Distribution:
    """mu(v) = exp(-|v|^2/2) / (2 pi)^{3/2}."""
    return maxwellian(grid, (0.0, 0.0, 0.0), 1.0)


def moments(f: Distribution) -> MomentSet:
    """Spatially averaged discrete quadrature of (1, v, |v|^2) f."""
    w = f.grid.weight
    F = f.velocity_average()
    v1, v2, v3 = f.grid.mesh()
    mass = float(F.sum()) * w
    mom = np.array([float((v1 * F).sum()), float((v2 * F).sum()),
                    float((v3 * F).sum())]) * w
    en = float(((v1 * v1 + v2 * v2 + v3 * v3) * F).sum()) * w
    return MomentSet(mass, mom, en)
