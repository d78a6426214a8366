"""Ion-scattering diffusion, electric-field transport, and the friction vector.

The spherical diffusion operator

    S F = div_v ( Pi(v) / <v> grad_v F ),      Pi(v) = I - v@v/|v|^2

diffuses along spheres |v| = const (Pi(v) v = 0). It is discretized in
conservative flux form with the tensor evaluated at cell-face centers: the
flux through an interior face normal to axis k is

    flux_k = sum_j [Pi(v_face)/<v_face>]_{kj} g_j(face),

with the normal gradient g_k as the two-point difference across the face
and the tangential g_j as face-averaged centered differences. The node sum
telescopes to exactly zero (mass), and the energy moment is conserved
within the tangential-flux truncation error.

On a centered, unshifted box the flux is exponentially fitted: F is divided
by a radial Gaussian envelope matched to its log-slope, so that sampled
Maxwellians (whose ratio is constant) are annihilated to rounding error --
the continuous identity Pi(v) grad(log omega) = 0 holds for any radial
envelope omega.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError
from .grid import Distribution, VelocityGrid

SIGN_CONVENTIONS = ("lhs_plus", "lhs_minus")


@dataclass(frozen=True)
class FieldSpec:
    """External electric field and the sign it enters the transport term with.

    lhs_plus (runaway convention): + E . grad_v F on the left-hand side, so
    the bulk accelerates along +E; lhs_minus is the opposite orientation.
    """

    E: tuple
    sign_convention: str = "lhs_plus"

    def __post_init__(self):
        object.__setattr__(self, "E", tuple(float(e) for e in self.E))
        if self.sign_convention not in SIGN_CONVENTIONS:
            raise ConfigurationError(
                f"sign_convention must be one of {SIGN_CONVENTIONS}, "
                f"got {self.sign_convention!r}")

    @property
    def acceleration(self) -> np.ndarray:
        s = 1.0 if self.sign_convention == "lhs_plus" else -1.0
        return s * np.asarray(self.E)

    @property
    def magnitude(self) -> float:
        return float(np.linalg.norm(self.E))


def projector_drift(v) -> np.ndarray:
    """div_v ( Pi(v)/<v> ) = -2 v / (<v> |v|^2), the drift part of S."""
    v = np.asarray(v, dtype=float)
    r2 = float(v @ v)
    return -2.0 * v / (np.sqrt(1.0 + r2) * r2)


def _envelope_temperature(f: np.ndarray, r2: np.ndarray):
    """Log-slope fit of f against a radial Gaussian exp(-r^2/2 T).

    Least squares of ln f on r^2/2 over the mass-carrying nodes; exact (up
    to rounding) when f is a sampled isotropic Gaussian. Returns None when
    the data carry no usable Gaussian envelope.
    """
    mask = f > 1e-13 * f.max(initial=0.0)
    if mask.sum() < 8:
        return None
    x = 0.5 * r2[mask]
    y = np.log(f[mask])
    x = x - x.mean()
    var = float(x @ x)
    if var == 0.0:
        return None
    slope = float(x @ (y - y.mean())) / var
    if not slope < 0.0 or not np.isfinite(slope):
        return None
    return -1.0 / slope


def _tensor_diffusion(f: np.ndarray, grid: VelocityGrid, face_coords,
                      envelope_T=None, node_r2=None) -> np.ndarray:
    """Face-flux divergence of Pi(w)/<w> grad f (optionally fitted)."""
    dv = grid.dv
    if envelope_T is None:
        G = f
    else:
        # exponential fitting: flux = D omega_face grad(f / omega)
        G = f * np.exp(node_r2 / (2.0 * envelope_T))
    out = np.zeros_like(f)
    for k in range(3):
        w = face_coords[k]
        r2f = np.maximum(w[0] ** 2 + w[1] ** 2 + w[2] ** 2, 1e-30)
        jb = np.sqrt(1.0 + r2f)
        lo = [slice(None)] * 3
        hi = [slice(None)] * 3
        lo[k] = slice(0, -1)
        hi[k] = slice(1, None)
        lo, hi = tuple(lo), tuple(hi)
        g = [None] * 3
        g[k] = (G[hi] - G[lo]) / dv
        for j in range(3):
            if j == k:
                continue
            cj = (np.roll(G, -1, axis=j) - np.roll(G, 1, axis=j)) / (2.0 * dv)
            first = [slice(None)] * 3
            first[j] = 0
            last = [slice(None)] * 3
            last[j] = -1
            # zero ghosts outside the box, not the wrapped values
            cj[tuple(first)] = np.take(G, 1, axis=j) / (2.0 * dv)
            cj[tuple(last)] = -np.take(G, -2, axis=j) / (2.0 * dv)
            g[j] = 0.5 * (cj[lo] + cj[hi])
        flux = sum(((1.0 if j == k else 0.0) - w[k] * w[j] / r2f) / jb * g[j]
                   for j in range(3))
        if envelope_T is not None:
            flux = flux * np.exp(-r2f / (2.0 * envelope_T))
        out[lo] += flux / dv
        out[hi] -= flux / dv
    return out


def _face_mesh(grid: VelocityGrid, k: int):
    """Node mesh with axis k replaced by the interior face midpoints."""
    axes = [grid.axis(i) for i in range(3)]
    axes[k] = 0.5 * (axes[k][:-1] + axes[k][1:])
    return np.meshgrid(*axes, indexing="ij")


def spherical_diffusion(F: Distribution, shift=None,
                        fitted: bool | None = None) -> Distribution:
    """div_v( Pi(w)/<w> grad_v F ) with w = v (default) or w = V + sqrt(T) v.

    Exactly mass conserving (interior-face flux form). The optional shift
    evaluates the tensor at w = V + sqrt(T) v while differentiating in v, as
    required by the moving-frame equation; the two grad_v -> grad_w
    conversions contribute the overall 1/T factor.

    fitted=None resolves to True exactly when the box is centered at the
    origin and unshifted; the fitted flux divides out a radial Gaussian
    envelope so sampled Maxwellians are annihilated to rounding error. On a
    drifted or shifted box the plain face-centered tensor is used.
    """
    grid = F.grid
    if fitted is None:
        fitted = shift is None and all(c == 0.0 for c in grid.center)
    if shift is None:
        scale = 1.0
        face_coords = [_face_mesh(grid, k) for k in range(3)]
    else:
        V, T = shift
        if not T > 0:
            raise ConfigurationError(f"shift temperature must be positive, got {T}")
        rt = np.sqrt(T)
        scale = 1.0 / T
        face_coords = [[V[i] + rt * c for i, c in enumerate(_face_mesh(grid, k))]
                       for k in range(3)]
    node_r2 = grid.radius2() if fitted else None
    out = np.empty_like(F.values)
    for ix in range(F.n_x):
        env_T = (_envelope_temperature(F.values[ix], node_r2)
                 if fitted else None)
        out[ix] = scale * _tensor_diffusion(F.values[ix], grid, face_coords,
                                            env_T, node_r2)
    return Distribution(grid, out)


def field_advection(F: Distribution, spec: FieldSpec) -> Distribution:
    """Transport term -accel . grad_v F, third-order upwind in flux form.

    Zero-inflow ghost cells; outflow flux leaves through the box faces, so
    the node sum of the output is the (negative) boundary mass-loss rate.
    """
    accel = spec.acceleration
    grid = F.grid
    dv = grid.dv
    out = np.zeros_like(F.values)
    for ix in range(F.n_x):
        f = F.values[ix]
        for ax in range(3):
            e = accel[ax]
            if e == 0.0:
                continue
            pad = [(0, 0)] * 3
            pad[ax] = (2, 2)
            fp = np.pad(f, pad)
            n = f.shape[ax]

            def sl(k):
                return tuple(slice(2 + k, 2 + k + n) if a == ax else slice(None)
                             for a in range(3))

            if e > 0:
                f_hi = (2.0 * fp[sl(1)] + 5.0 * fp[sl(0)] - fp[sl(-1)]) / 6.0
                f_lo = (2.0 * fp[sl(0)] + 5.0 * fp[sl(-1)] - fp[sl(-2)]) / 6.0
            else:
                f_hi = (2.0 * fp[sl(0)] + 5.0 * fp[sl(1)] - fp[sl(2)]) / 6.0
                f_lo = (2.0 * fp[sl(-1)] + 5.0 * fp[sl(0)] - fp[sl(1)]) / 6.0
            out[ix] -= e * (f_hi - f_lo) / dv
    return Distribution(grid, out)


def friction_R(F: Distribution, shift=None) -> np.ndarray:
    """R = int w / (<w> |w|^2) F dv with w = v, or w = V + sqrt(T) v if shifted.

    Spatially averaged; the integrand is finite everywhere because the
    origin is never a node (and a shifted lattice keeps that property only
    statistically -- callers in the frame pass V on the cell lattice).
    """
    grid = F.grid
    v = grid.mesh()
    if shift is None:
        w1, w2, w3 = v
    else:
        V, T = shift
        rt = np.sqrt(T)
        w1, w2, w3 = (V[i] + rt * v[i] for i in range(3))
    r2 = w1 * w1 + w2 * w2 + w3 * w3
    if shift is not None:
        # shifted lattice may land a node arbitrarily close to w = 0;
        # floor |w|^2 at the half-cell scale to keep the quadrature sane
        r2 = np.maximum(r2, (0.5 * np.sqrt(shift[1]) * grid.dv) ** 2)
    q = 1.0 / (np.sqrt(1.0 + r2) * r2)
    f = F.velocity_average()
    return np.array([
        float((w1 * q * f).sum()),
        float((w2 * q * f).sum()),
        float((w3 * q * f).sum()),
    ]) * grid.weight
