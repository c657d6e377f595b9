import logging
from dataclasses import dataclass

import numpy as np
from scipy.ndimage import correlate

from utils.bitplane import Bitplane
from utils.errors import DomainError, ShapeError
from utils.image_io import GrayImage
from utils.qsim import QuantumPlane, cbs_ones

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class KernelSpec:
    """Square odd w x w window; h is the strict-majority threshold."""
    w: int = 3

    def __post_init__(self):
        if not isinstance(self.w, (int, np.integer)) or isinstance(self.w, bool):
            raise DomainError(f"Window size must be an integer, got {self.w!r}")
        if self.w < 3:
            raise DomainError(f"Window size must be at least 3, got {self.w}")
        if self.w % 2 == 0:
            raise DomainError(f"Window size must be odd, got {self.w}")

    @property
    def h(self) -> int:
        return (self.w * self.w + 1) // 2

    @property
    def margin(self) -> int:
        return self.w // 2

    @property
    def area(self) -> int:
        return self.w * self.w


def _check_fits(shape, k: KernelSpec) -> None:
    rows, cols = shape
    if rows < k.w or cols < k.w:
        raise ShapeError(f"{rows}x{cols} input is smaller than the {k.w}x{k.w} window")


def window_sums(values: np.ndarray, k: KernelSpec) -> np.ndarray:
    """
    Sum of every w x w window of `values` centred on each pixel. Only the
    interior (margin away from each edge) is meaningful; callers copy borders.
    """
    kernel = np.ones((k.w, k.w), dtype=np.int64)
    return correlate(values.astype(np.int64), kernel, mode='constant', cval=0)


def _interior(shape, k: KernelSpec):
    m = k.margin
    return slice(m, shape[0] - m), slice(m, shape[1] - m)


def _majority(ones: np.ndarray, k: KernelSpec) -> np.ndarray:
    """Strict-majority vote over a 0/1 array; border pixels pass through."""
    _check_fits(ones.shape, k)
    counts = window_sums(ones, k)
    out = ones.astype(np.uint8).copy()
    inner = _interior(ones.shape, k)
    out[inner] = (counts[inner] >= k.h).astype(np.uint8)
    return out


def qbmf(p: Bitplane, k: KernelSpec) -> Bitplane:
    """
    Boolean mean filter: an interior pixel becomes 1 when at least h of the
    w*w input bits around it are 1. Reads the input plane only.
    """
    return Bitplane(_majority(p.bits, k))


def qbmf_quantum(qp: QuantumPlane, k: KernelSpec) -> QuantumPlane:
    """The same vote inside the machine: counts |1> states per window and emits exact CBS."""
    ones = cbs_ones(qp).astype(np.uint8)
    voted = _majority(ones, k).astype(np.float64)
    logger.debug(f"Quantum majority over {qp.rows}x{qp.cols} plane, w={k.w}, h={k.h}")
    return QuantumPlane(alpha=1.0 - voted, beta=voted)


def majority_oracle(p: Bitplane, k: KernelSpec) -> Bitplane:
    """Brute-force recount per pixel, kept independent from the vectorized filter."""
    _check_fits(p.shape, k)
    rows, cols = p.shape
    src = p.bits.tolist()
    out = [list(row) for row in src]
    m = k.margin
    for r in range(m, rows - m):
        for c in range(m, cols - m):
            n = 0
            for dr in range(-m, m + 1):
                for dc in range(-m, m + 1):
                    n += src[r + dr][c + dc]
            out[r][c] = 1 if n >= k.h else 0
    return Bitplane(np.array(out, dtype=np.uint8))


def mean_filter(ch: GrayImage, k: KernelSpec) -> GrayImage:
    """
    Classical w x w averaging kernel (weights 1/w^2). Interior pixels get the
    round-half-up mean, borders are copied.
    """
    pixels = ch.pixels
    _check_fits(pixels.shape, k)
    sums = window_sums(pixels, k)
    out = pixels.astype(np.int64).copy()
    inner = _interior(pixels.shape, k)
    # round-half-up of sums / area in integer arithmetic
    out[inner] = (2 * sums[inner] + k.area) // (2 * k.area)
    return GrayImage(np.clip(out, 0, 255))
