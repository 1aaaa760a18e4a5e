"""
Shared fixtures for the horofol test suite
"""
import numpy as np
import pytest

from horofol.config import Settings, get_settings, use_settings
from horofol.geometry.hyperbolic_plane import H2Point, IsometryH2
from horofol.geometry.product_space import ProductIsometry
from horofol.groups.group_spec import cyclic_spec, load_group_spec
from horofol.measures.poincare import LinearForm


@pytest.fixture(autouse=True)
def default_settings():
    """Every test starts and ends with the default settings record"""
    previous = get_settings()
    use_settings(Settings())
    yield
    use_settings(previous)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def origin():
    return H2Point(0.0, 1.0)


@pytest.fixture
def diagonal_spec():
    return load_group_spec("diagonal_schottky")


@pytest.fixture
def twisted_spec():
    return load_group_spec("twisted_schottky")


@pytest.fixture
def uniform_psi():
    return LinearForm.of(0.5, 0.5)


@pytest.fixture
def cyclic_translation():
    """Cyclic group of translations by 1 along the imaginary axis, in both factors"""
    g = IsometryH2.translation(1.0)
    return cyclic_spec(ProductIsometry.of(g, g))
