import numpy as np
import pytest

from factories import make_scene
from utils.image_io import ColorImage


@pytest.fixture(scope='session')
def scene() -> ColorImage:
    """512x512 colour test scene standing in for a natural photograph."""
    return make_scene()


@pytest.fixture
def np_rng() -> np.random.Generator:
    return np.random.default_rng(12345)
