import numpy as np
import pytest

from runakin.stencils import (diff_centered, div_flux, spectral_divergence,
                              spectral_gradient, spectral_wavenumbers)


def test_diff_centered_linear_field(grid16):
    # a linear profile is differentiated exactly away from the boundary
    v1, _, _ = grid16.mesh()
    d = diff_centered(2.5 * v1, grid16.dv, axis=0)
    np.testing.assert_allclose(d[1:-1], 2.5, atol=1e-13)


def test_diff_centered_second_order(grid32):
    v1, _, _ = grid32.mesh()
    f = np.sin(0.5 * v1)
    d = diff_centered(f, grid32.dv, axis=0)
    err = np.abs(d - 0.5 * np.cos(0.5 * v1))[2:-2].max()
    assert err < 0.5 * 0.5 ** 2 * grid32.dv ** 2  # ~ h^2 f'''/6 bound


def test_div_flux_telescopes_to_zero(grid16, rng):
    U = [rng.standard_normal((16,) * 3) for _ in range(3)]
    out = div_flux(U, grid16.dv)
    assert abs(out.sum()) < 1e-11 * np.abs(out).max()


def test_div_flux_orientation(grid16):
    # constant-gradient potential: U = e1 -> div U = 0 interior, and the
    # flux of an increasing linear field points in +v1
    v1, _, _ = grid16.mesh()
    out = div_flux([v1, np.zeros_like(v1), np.zeros_like(v1)], grid16.dv)
    np.testing.assert_allclose(out[1:-1], 1.0, atol=1e-12)


def test_spectral_wavenumbers_nyquist_zeroed():
    k, kr = spectral_wavenumbers(16, 0.5)
    assert k[8] == 0.0
    assert kr[-1] == 0.0
    assert k[1] == pytest.approx(2 * np.pi / (16 * 0.5))


def test_spectral_gradient_exact_on_modes(grid16):
    # a resolved Fourier mode is differentiated exactly
    n, dv = grid16.n, grid16.dv
    x = np.arange(n) * dv
    k1 = 2 * np.pi * 2 / (n * dv)
    f = np.sin(k1 * x)[:, None, None] * np.ones((1, n, n))
    d1, d2, d3 = spectral_gradient(f, dv)
    expected = k1 * np.cos(k1 * x)[:, None, None] * np.ones((1, n, n))
    np.testing.assert_allclose(d1, expected, atol=1e-12)
    np.testing.assert_allclose(d2, 0.0, atol=1e-12)
    np.testing.assert_allclose(d3, 0.0, atol=1e-12)


def test_spectral_gradient_gaussian(grid32):
    v1, v2, v3 = grid32.mesh()
    f = np.exp(-(v1 ** 2 + v2 ** 2 + v3 ** 2) / 2.0)
    d1, _, _ = spectral_gradient(f, grid32.dv)
    np.testing.assert_allclose(d1, -v1 * f, atol=1e-7)


def test_spectral_divergence_zero_mean(grid16, rng):
    U = [rng.standard_normal((16,) * 3) for _ in range(3)]
    out = spectral_divergence(U, grid16.dv)
    assert abs(out.sum()) < 1e-10 * np.abs(out).max()


def test_spectral_divergence_matches_gradient_sum(grid16, rng):
    f = rng.standard_normal((16,) * 3)
    g = rng.standard_normal((16,) * 3)
    h = rng.standard_normal((16,) * 3)
    dv = grid16.dv
    div = spectral_divergence([f, g, h], dv)
    ref = (spectral_gradient(f, dv)[0] + spectral_gradient(g, dv)[1]
           + spectral_gradient(h, dv)[2])
    np.testing.assert_allclose(div, ref, atol=1e-11)
