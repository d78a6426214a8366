import numpy as np
import pytest

from runakin.grid import VelocityGrid, unit_maxwellian


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def grid16():
    return VelocityGrid(8.0, 16, (0.0, 0.0, 0.0))


@pytest.fixture
def grid32():
    return VelocityGrid(8.0, 32, (0.0, 0.0, 0.0))


@pytest.fixture
def mu16(grid16):
    return unit_maxwellian(grid16)


@pytest.fixture
def mu32(grid32):
    return unit_maxwellian(grid32)
