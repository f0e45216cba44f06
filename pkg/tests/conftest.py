import numpy as np
import pytest

from subimage_search.imaging import ImageRGB


def random_image(rng: np.random.Generator, n_rows: int, n_cols: int, channels: int = 3) -> ImageRGB:
    return ImageRGB(rng.integers(0, 256, (n_rows, n_cols, channels), dtype=np.uint8))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)
