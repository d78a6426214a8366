import math

import numpy as np
import pytest

from runakin.errors import (ConfigurationError, DegenerateStateError,
                            GridMismatchError)
from runakin.grid import (Distribution, VelocityGrid, build_grid, maxwellian,
                          moments, unit_maxwellian)


def truncated_gaussian_mass(extent, center, V, T):
    """Exact box integral of M_{V,T} via the error function (oracle)."""
    m = 1.0
    for i in range(3):
        lo, hi = center[i] - extent, center[i] + extent
        s = math.sqrt(2.0 * T)
        m *= 0.5 * (math.erf((hi - V[i]) / s) - math.erf((lo - V[i]) / s))
    return m


class TestVelocityGrid:
    def test_geometry(self, grid16):
        assert grid16.dv == pytest.approx(1.0)
        ax = grid16.axis(0)
        assert ax[0] == pytest.approx(-7.5)
        assert ax[-1] == pytest.approx(7.5)
        # cell-centered: origin is never a node
        assert np.abs(ax).min() == pytest.approx(0.5)

    def test_origin_clearance(self):
        with pytest.raises(ConfigurationError):
            VelocityGrid(8.0, 15)          # odd
        with pytest.raises(ConfigurationError):
            VelocityGrid(-1.0, 16)
        with pytest.raises(ConfigurationError):
            # half-cell shift on every axis puts a node exactly at the origin
            VelocityGrid(8.0, 16, (0.5, 0.5, 0.5))
        # integer-cell shifts keep the origin mid-cell
        VelocityGrid(8.0, 16, (3.0, -2.0, 0.0))
        # one half-shifted axis still leaves the nearest node dv/sqrt(2) away
        VelocityGrid(8.0, 16, (0.5, 0.0, 0.0))

    def test_shifted_same_lattice(self, grid16):
        g2 = grid16.shifted((3, 0, -1))
        assert g2.center == (3.0, 0.0, -1.0)
        assert not grid16.same_lattice(g2)
        assert g2.same_lattice(g2.shifted((0, 0, 0)))
        # shifted axes are translated copies of the originals
        np.testing.assert_allclose(g2.axis(0), grid16.axis(0) + 3.0)

    def test_build_grid_casts(self):
        g = build_grid(8, 16, (0, 0, 0))
        assert isinstance(g.extent, float) and isinstance(g.n, int)


class TestDistribution:
    def test_shape_promotion(self, grid16):
        f = Distribution(grid16, np.zeros((16, 16, 16)))
        assert f.values.shape == (1, 16, 16, 16)
        assert f.n_x == 1

    def test_shape_mismatch(self, grid16):
        with pytest.raises(GridMismatchError):
            Distribution(grid16, np.zeros((8, 8, 8)))

    def test_rejects_nan(self, grid16):
        vals = np.zeros((16, 16, 16))
        vals[0, 0, 0] = np.nan
        with pytest.raises(ValueError):
            Distribution(grid16, vals)

    def test_velocity_average(self, grid16):
        vals = np.stack([np.full((16,) * 3, 1.0), np.full((16,) * 3, 3.0)])
        f = Distribution(grid16, vals)
        np.testing.assert_allclose(f.velocity_average(), 2.0)


class TestMaxwellianMoments:
    def test_unit_maxwellian_mass_oracle(self, grid32):
        mu = unit_maxwellian(grid32)
        m = moments(mu)
        exact = truncated_gaussian_mass(8.0, (0, 0, 0), (0, 0, 0), 1.0)
        # midpoint quadrature of a smooth Gaussian: spectrally accurate
        assert m.mass == pytest.approx(exact, abs=1e-12)
        np.testing.assert_allclose(m.momentum, 0.0, atol=1e-15)

    def test_moment_roundtrip(self, grid32):
        V, T = (1.5, -0.5, 0.5), 1.3
        m = moments(maxwellian(grid32, V, T))
        np.testing.assert_allclose(m.bulk, V, atol=1e-9)
        assert m.temperature == pytest.approx(T, abs=1e-6)

    def test_bad_temperature(self, grid16):
        with pytest.raises(ConfigurationError):
            maxwellian(grid16, (0, 0, 0), 0.0)

    def test_truncation_warning(self, grid16, caplog):
        import logging
        with caplog.at_level(logging.WARNING, logger="runakin.grid"):
            maxwellian(grid16, (7.0, 0.0, 0.0), 1.0)
        assert any("truncation" in r.message for r in caplog.records)

    def test_degenerate_moments(self, grid16):
        m = moments(Distribution(grid16, np.zeros((16,) * 3)))
        with pytest.raises(DegenerateStateError):
            m.bulk
        with pytest.raises(DegenerateStateError):
            m.temperature

    def test_quadrature_weight(self, grid16):
        ones = Distribution(grid16, np.ones((16,) * 3))
        assert moments(ones).mass == pytest.approx((2 * 8.0) ** 3)
