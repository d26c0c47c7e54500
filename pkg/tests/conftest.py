import numpy as np
import pytest

from app.config import get_settings
from app.routers.helpers.geometry_helper import DEFAULT_TOLERANCE


@pytest.fixture
def tol():
    return DEFAULT_TOLERANCE


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(autouse=True)
def fresh_settings():
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()
