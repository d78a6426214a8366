"""Landau-Coulomb collision operator on the velocity lattice.

Kernel (Coulomb case):

    a(z) = |z|^-1 (I - z@z / |z|^2),    b_i(z) = sum_j d_j a_ij(z) = -2 z_i |z|^-3

The bilinear operator is assembled in divergence form,

    Q(F, G) = div_v [ (a*F) . grad G - (b*F) G ],

with the derived field b*F realized as sum_j a_ij * (d_j F): convolving a
with the discrete gradient keeps the exact cancellation a(z) z = 0 at the
kernel level, which is what makes Q(M, M) vanish for sampled Maxwellians.
Velocity derivatives and the outer divergence are spectral; the node sum of
the output is exactly zero (zero Fourier mode).

Convolutions run either as circular FFT products on a 2N-padded box (fast
path, exact up to roundoff) or as direct kernel-matrix summation (reference
path, small grids only).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from numpy.fft import irfftn, rfftn

from .grid import Distribution, VelocityGrid, unit_maxwellian
from .stencils import spectral_divergence, spectral_gradient

logger = logging.getLogger(__name__)

_PAIRS = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]
_PAIR_INDEX = {p: i for i, p in enumerate(_PAIRS)}

DEFAULT_CUTOFF_RADIUS = 6.0  # |v| beyond which mu^(-1/2)-weighted outputs are zeroed


def _singular_cell_average(dv: float, n_angles: int = 256) -> np.ndarray:
    """Average of a_ij over the cube cell containing z = 0.

    In spherical coordinates the cube integral reduces to a smooth angular
    one: int_cell a_ij dz = int_{S^2} (delta_ij - w_i w_j) r_max(w)^2 / 2 dW
    with r_max the distance from the origin to the cube face along w.
    """
    nc, nph = n_angles, 2 * n_angles
    cosq = -1.0 + (np.arange(nc) + 0.5) * (2.0 / nc)
    phi = (np.arange(nph) + 0.5) * (2.0 * np.pi / nph)
    C, PH = np.meshgrid(cosq, phi, indexing="ij")
    S = np.sqrt(1.0 - C * C)
    w = np.stack([S * np.cos(PH), S * np.sin(PH), C])
    rmax = (dv / 2.0) / np.max(np.abs(w), axis=0)
    dOmega = (2.0 / nc) * (2.0 * np.pi / nph)
    A = np.zeros((3, 3))
    for i in range(3):
        for j in range(3):
            d = 1.0 if i == j else 0.0
            A[i, j] = np.sum((d - w[i] * w[j]) * rmax * rmax / 2.0) * dOmega
    return A / dv ** 3


def kernel_table(n: int, dv: float):
    """Sampled a_ij on the offset lattice [-(n-1), n-1]^3 * dv.

    Returns a list of six (2n-1)^3 arrays in _PAIRS order. The zero-offset
    sample is the analytic cell average (the kernel is locally integrable).
    """
    off = np.arange(-(n - 1), n) * dv
    z1, z2, z3 = np.meshgrid(off, off, off, indexing="ij")
    r2 = z1 * z1 + z2 * z2 + z3 * z3
    r2s = np.where(r2 > 0, r2, 1.0)
    rs = np.sqrt(r2s)
    zc = n - 1
    zs = (z1, z2, z3)
    A0 = _singular_cell_average(dv)
    out = []
    for (i, j) in _PAIRS:
        d = 1.0 if i == j else 0.0
        aij = (d - zs[i] * zs[j] / r2s) / rs
        aij[zc, zc, zc] = A0[i, j]
        out.append(aij)
    return out


class KernelCache:
    """FFTs of the truncated, zero-padded kernel, keyed by (n, dv).

    Padding to 2n per axis places every offset in [-(n-1), n-1] at a unique
    circular index, so the FFT product reproduces the direct sum exactly.
    """

    def __init__(self):
        self._data = {}

    def get(self, n: int, dv: float):
        key = (n, round(dv, 12))
        if key not in self._data:
            m = 2 * n
            idx = np.arange(-(n - 1), n) % m
            ffts = []
            for kern in kernel_table(n, dv):
                kc = np.zeros((m, m, m))
                kc[np.ix_(idx, idx, idx)] = kern
                ffts.append(rfftn(kc))
            self._data[key] = ffts
            logger.debug("kernel FFTs built for n=%d dv=%g", n, dv)
        return self._data[key]


_KERNELS = KernelCache()


@dataclass
class KernelFields:
    """Convolved coefficient fields a*F (six components) and b*F (three)."""

    grid: VelocityGrid
    a_conv: list       # _PAIRS order
    b_conv: list       # i = 0, 1, 2

    def a(self, i: int, j: int) -> np.ndarray:
        return self.a_conv[_PAIR_INDEX[(min(i, j), max(i, j))]]


def _pad_rfftn(f: np.ndarray, m: int) -> np.ndarray:
    fp = np.zeros((m, m, m))
    fp[: f.shape[0], : f.shape[1], : f.shape[2]] = f
    return rfftn(fp)


def _fft_fields(f: np.ndarray, grads, n: int, dv: float):
    """FFT-path coefficient fields: a*f and b*f = sum_j a_ij * grads[j].

    The b components are summed in Fourier space, so one evaluation costs
    4 forward and 9 inverse transforms on the padded (2n)^3 box.
    """
    ak = _KERNELS.get(n, dv)
    m = 2 * n
    fh = _pad_rfftn(f, m)
    gh = [_pad_rfftn(g, m) for g in grads]

    def back(spec):
        return irfftn(spec, s=(m, m, m), axes=(0, 1, 2))[:n, :n, :n] * dv ** 3

    a_conv = [back(akk * fh) for akk in ak]
    b_conv = [
        back(sum(ak[_PAIR_INDEX[(min(i, j), max(i, j))]] * gh[j]
                 for j in range(3)))
        for i in range(3)
    ]
    return a_conv, b_conv


def _fft_convolve_batch(fields, n: int, dv: float):
    """Circular convolutions of each padded input with every a_ij kernel.

    fields: list of (n,n,n) arrays. Returns list-of-lists [input][pair].
    """
    ak = _KERNELS.get(n, dv)
    m = 2 * n
    out = []
    for f in fields:
        fh = _pad_rfftn(f, m)
        out.append([
            irfftn(akk * fh, s=(m, m, m), axes=(0, 1, 2))[:n, :n, :n] * dv ** 3
            for akk in ak
        ])
    return out


def _direct_convolve_batch(fields, n: int, dv: float):
    """Direct-sum linear convolution (non-FFT reference path).

    out[m] = sum_n kern[m - n + (n-1)] f[n] dv^3, i.e. the centered slice of
    the full linear convolution. O(n^6) work; intended for n <= 16 checks.
    """
    from scipy.signal import convolve
    kerns = kernel_table(n, dv)
    ctr = n - 1
    sl = slice(ctr, ctr + n)
    out = []
    for f in fields:
        out.append([
            convolve(f, kern, mode="full", method="direct")[sl, sl, sl] * dv ** 3
            for kern in kerns
        ])
    return out


def convolve_kernels(F: Distribution, fast: bool = True) -> KernelFields:
    """Compute a*F and b*F = sum_j a_ij * (d_j F) for a (homogeneous) field.

    fast=True uses the zero-padded FFT path; fast=False the direct sum.
    """
    grid = F.grid
    n, dv = grid.n, grid.dv
    f = F.velocity_average()
    grads = spectral_gradient(f, dv)
    if fast:
        aF, bF = _fft_fields(f, grads, n, dv)
    else:
        batch = _direct_convolve_batch([f, *grads], n, dv)
        aF = batch[0]
        gconv = batch[1:]
        bF = [sum(gconv[j][_PAIR_INDEX[(min(i, j), max(i, j))]]
                  for j in range(3)) for i in range(3)]
    return KernelFields(grid, aF, bF)


def _q_single(f: np.ndarray, g: np.ndarray, grid: VelocityGrid,
              kf: KernelFields | None = None) -> np.ndarray:
    dv = grid.dv
    if kf is None:
        kf = convolve_kernels(Distribution(grid, f))
    dg = spectral_gradient(g, dv)
    U = []
    for i in range(3):
        u = -kf.b_conv[i] * g
        for j in range(3):
            u = u + kf.a(i, j) * dg[j]
        U.append(u)
    return spectral_divergence(U, dv)


def collision_Q(F: Distribution, G: Distribution,
                kernel_fields: KernelFields | None = None) -> Distribution:
    """Bilinear Landau operator Q(F, G) in divergence form.

    The discrete velocity integral of the output is exactly zero. Optional
    precomputed kernel_fields (for F) skip the convolution step.
    """
    from .grid import check_same_grid
    check_same_grid(F, G)
    out = np.empty_like(F.values)
    for ix in range(F.n_x):
        kf = kernel_fields
        if kf is None or F.n_x > 1:
            kf = convolve_kernels(Distribution(F.grid, F.values[ix]))
        out[ix] = _q_single(F.values[ix], G.values[ix], F.grid, kf)
    return Distribution(F.grid, out)


class LinearOperator:
    """L(g) = Q(mu, g) + Q(g, mu) with cached kernel fields of mu."""

    def __init__(self, grid: VelocityGrid):
        self.grid = grid
        self.mu = unit_maxwellian(grid)
        self.kf_mu = convolve_kernels(self.mu)

    def __call__(self, g: Distribution) -> Distribution:
        q1 = collision_Q(self.mu, g, kernel_fields=self.kf_mu)
        q2 = collision_Q(g, self.mu)
        return Distribution(self.grid, q1.values + q2.values)


def linear_L(g: Distribution) -> Distribution:
    return LinearOperator(g.grid)(g)


def _weighted_by_inv_sqrt_mu(vals: np.ndarray, grid: VelocityGrid,
                             cutoff: float):
    """Multiply by mu^(-1/2), zeroing nodes beyond |v| = cutoff."""
    r2 = grid.radius2()
    inside = r2 <= cutoff * cutoff
    inv = np.where(inside, np.exp(r2 / 4.0) * (2.0 * np.pi) ** 0.75, 0.0)
    n_zeroed = int(np.count_nonzero(~inside))
    return vals * inv, n_zeroed


def _sqrt_mu_field(grid: VelocityGrid) -> np.ndarray:
    return (2.0 * np.pi) ** -0.75 * np.exp(-grid.radius2() / 4.0)


def bilinear_Gamma(g: Distribution, h: Distribution,
                   cutoff: float = DEFAULT_CUTOFF_RADIUS) -> Distribution:
    """Gamma(g, h) = mu^(-1/2) Q(mu^(1/2) g, mu^(1/2) h), cutoff-guarded."""
    from .grid import check_same_grid
    check_same_grid(g, h)
    sm = _sqrt_mu_field(g.grid)
    q = collision_Q(Distribution(g.grid, g.values * sm),
                    Distribution(h.grid, h.values * sm))
    out, n_zeroed = _weighted_by_inv_sqrt_mu(q.values, g.grid, cutoff)
    if n_zeroed:
        logger.debug("Gamma: %d nodes beyond cutoff radius zeroed", n_zeroed)
    return Distribution(g.grid, out)


def linearized_cL(f: Distribution,
                  cutoff: float = DEFAULT_CUTOFF_RADIUS) -> Distribution:
    """cL(f) = mu^(-1/2) [Q(mu, mu^(1/2) f) + Q(mu^(1/2) f, mu)]."""
    grid = f.grid
    sm = _sqrt_mu_field(grid)
    smf = Distribution(grid, f.values * sm)
    op = LinearOperator(grid)
    q1 = collision_Q(op.mu, smf, kernel_fields=op.kf_mu)
    q2 = collision_Q(smf, op.mu)
    out, n_zeroed = _weighted_by_inv_sqrt_mu(q1.values + q2.values, grid, cutoff)
    if n_zeroed:
        logger.debug("cL: %d nodes beyond cutoff radius zeroed", n_zeroed)
    return Distribution(grid, out)
