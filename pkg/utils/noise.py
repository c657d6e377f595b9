import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from config import DEFAULT_DENSITY, DEFAULT_SEED, PEPPER_VALUE, SALT_VALUE
from utils.errors import DomainError
from utils.image_io import AnyImage, ColorImage, GrayImage
from utils.rng import grid_uniform

logger = logging.getLogger(__name__)

# Channel key used for every channel when corruption is coupled across a pixel
_COUPLED_KEY = -1


@dataclass(frozen=True)
class NoiseSpec:
    density: float = DEFAULT_DENSITY
    seed: int = DEFAULT_SEED
    couple_channels: bool = False
    salt_value: int = SALT_VALUE
    pepper_value: int = PEPPER_VALUE

    def __post_init__(self):
        if not 0.0 <= float(self.density) <= 1.0:
            raise DomainError(f"Noise density must lie in [0, 1], got {self.density}")


def _corrupt(pixels: np.ndarray, spec: NoiseSpec, channel_key: int) -> np.ndarray:
    rows, cols = pixels.shape
    u = grid_uniform(spec.seed, rows, cols, channel_key)
    half = spec.density / 2.0
    out = pixels.copy()
    # u < d/2 -> pepper, d/2 <= u < d -> salt
    out[u < half] = spec.pepper_value
    out[(u >= half) & (u < spec.density)] = spec.salt_value
    return out


def salt_pepper(img: AnyImage, spec: NoiseSpec, workers: int = 1) -> AnyImage:
    """
    Salt-and-pepper corruption: each sample independently becomes pepper with
    probability d/2 and salt with probability d/2. Draws are keyed by
    (seed, channel, r, c), so the output is the same for any worker count.
    """
    if spec.density == 0:
        return img
    if isinstance(img, GrayImage):
        return GrayImage(_corrupt(img.pixels, spec, 0))

    keys = [_COUPLED_KEY] * 3 if spec.couple_channels else [0, 1, 2]
    channels = [ch.pixels for ch in img.channels]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            noisy = list(pool.map(lambda args: _corrupt(args[0], spec, args[1]), zip(channels, keys)))
    else:
        noisy = [_corrupt(ch, spec, key) for ch, key in zip(channels, keys)]
    logger.debug(f"Applied salt & pepper d={spec.density} seed={spec.seed} to {img.rows}x{img.cols} image")
    return ColorImage(*(GrayImage(ch) for ch in noisy))
