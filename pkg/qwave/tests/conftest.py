"""
Ortak test fixture'ları
"""
import numpy as np
import pytest

from qwave.core.nonlinearity import Nonlinearity
from qwave.core.propagator import LinearPropagator
from qwave.core.spectral import ModeGrid
from qwave.utils.config import AppSettings, reload_settings


@pytest.fixture(autouse=True)
def fresh_settings():
    """Her test varsayılan ayarlarla başlar"""
    settings = reload_settings(AppSettings())
    yield settings
    reload_settings(AppSettings())


@pytest.fixture
def grid():
    """Küçük 1B ızgara"""
    return ModeGrid(1, 16)


@pytest.fixture
def small_grid():
    return ModeGrid(1, 8)


@pytest.fixture
def propagator(grid):
    return LinearPropagator(grid, 1.0)


@pytest.fixture
def quintic():
    return Nonlinearity()


@pytest.fixture
def linear():
    """Doğrusal olmayan terimsiz model"""
    return Nonlinearity(quintic=False)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
