"""Discrete derivative building blocks on the velocity lattice.

Two families coexist:

* centered second-order differences with zero ghost cells, used by the
  weighted norms and the spherical-diffusion flux (local, conservative);
* Fourier (periodic) derivatives, used inside the collision operator where
  the smooth, box-interior distributions make spectral accuracy pay off.
"""

from __future__ import annotations

import numpy as np
from numpy.fft import fftfreq, irfftn, rfftfreq, rfftn


def diff_centered(F: np.ndarray, dv: float, axis: int) -> np.ndarray:
    """Second-order centered difference with zero ghost values."""
    out = (np.roll(F, -1, axis=axis) - np.roll(F, 1, axis=axis)) / (2.0 * dv)
    sl = [slice(None)] * F.ndim
    sl[axis] = 0
    out[tuple(sl)] = np.take(F, 1, axis=axis) / (2.0 * dv)
    sl[axis] = F.shape[axis] - 1
    out[tuple(sl)] = -np.take(F, -2, axis=axis) / (2.0 * dv)
    return out


def div_flux(U, dv: float) -> np.ndarray:
    """Flux-form divergence of a node-valued vector field.

    Face values are arithmetic means of the adjacent nodes and boundary
    faces carry zero flux, so the node sum of the output telescopes to
    exactly zero.
    """
    out = np.zeros_like(U[0])
    for ax in range(3):
        u = U[ax]
        lo = [slice(None)] * 3
        hi = [slice(None)] * 3
        lo[ax] = slice(0, -1)
        hi[ax] = slice(1, None)
        face = 0.5 * (u[tuple(lo)] + u[tuple(hi)])
        out[tuple(lo)] += face / dv
        out[tuple(hi)] -= face / dv
    return out


def spectral_wavenumbers(n: int, dv: float):
    """Full and real-FFT wavenumbers with the Nyquist mode zeroed."""
    k = 2.0 * np.pi * fftfreq(n, d=dv)
    kr = 2.0 * np.pi * rfftfreq(n, d=dv)
    if n % 2 == 0:
        k[n // 2] = 0.0
        kr[-1] = 0.0
    return k, kr


def spectral_gradient(F: np.ndarray, dv: float):
    n = F.shape[0]
    k, kr = spectral_wavenumbers(n, dv)
    Fh = rfftn(F)
    shape = F.shape
    return (
        irfftn(1j * k[:, None, None] * Fh, s=shape, axes=(0, 1, 2)),
        irfftn(1j * k[None, :, None] * Fh, s=shape, axes=(0, 1, 2)),
        irfftn(1j * kr[None, None, :] * Fh, s=shape, axes=(0, 1, 2)),
    )


def spectral_divergence(U, dv: float) -> np.ndarray:
    """Fourier divergence; its node sum vanishes identically (zero mode)."""
    n = U[0].shape[0]
    k, kr = spectral_wavenumbers(n, dv)
    out = (
        1j * k[:, None, None] * rfftn(U[0])
        + 1j * k[None, :, None] * rfftn(U[1])
        + 1j * kr[None, None, :] * rfftn(U[2])
    )
    return irfftn(out, s=U[0].shape, axes=(0, 1, 2))
