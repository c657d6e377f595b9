import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from config import BPP
from utils.errors import DomainError, ShapeError
from utils.image_io import GrayImage

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Bitplane:
    """Binary matrix holding one bit position of one channel (values 0/1)."""
    bits: np.ndarray

    def __post_init__(self):
        bits = np.array(self.bits, copy=True)
        if bits.ndim != 2 or bits.shape[0] < 1 or bits.shape[1] < 1:
            raise ShapeError(f"Bitplane must be a non-empty 2-D array, got shape {bits.shape}")
        if bits.size and not np.isin(bits, (0, 1)).all():
            raise DomainError("Bitplane values must be exactly 0 or 1")
        bits = bits.astype(np.uint8)
        bits.flags.writeable = False
        object.__setattr__(self, 'bits', bits)

    @property
    def rows(self) -> int:
        return self.bits.shape[0]

    @property
    def cols(self) -> int:
        return self.bits.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.bits.shape

    def __eq__(self, other) -> bool:
        if not isinstance(other, Bitplane):
            return NotImplemented
        return np.array_equal(self.bits, other.bits)


@dataclass(frozen=True, eq=False)
class BitplaneStack:
    """`bpp` planes of one channel; planes[0] is the LSB, planes[bpp - 1] the MSB."""
    planes: Tuple[Bitplane, ...]
    bpp: int = BPP

    def __post_init__(self):
        planes = tuple(self.planes)
        if self.bpp < 1:
            raise DomainError(f"bpp must be positive, got {self.bpp}")
        if len(planes) != self.bpp:
            raise ShapeError(f"Expected {self.bpp} planes, got {len(planes)}")
        shapes = {p.shape for p in planes}
        if len(shapes) != 1:
            raise ShapeError(f"All planes must share dimensions, got {sorted(shapes)}")
        object.__setattr__(self, 'planes', planes)

    @property
    def rows(self) -> int:
        return self.planes[0].rows

    @property
    def cols(self) -> int:
        return self.planes[0].cols

    @property
    def shape(self) -> Tuple[int, int]:
        return self.planes[0].shape

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitplaneStack):
            return NotImplemented
        return self.bpp == other.bpp and all(a == b for a, b in zip(self.planes, other.planes))


def pixel_to_bits(p: int, bpp: int = BPP) -> List[int]:
    """MSB-first binary expansion of `p` over `bpp` bits."""
    if not 0 <= p < (1 << bpp):
        raise DomainError(f"Pixel value {p} does not fit in {bpp} bits")
    return [(p >> (bpp - 1 - i)) & 1 for i in range(bpp)]


def bits_to_pixel(bits: Sequence[int]) -> int:
    value = 0
    for b in bits:
        if b not in (0, 1):
            raise DomainError(f"Bit vector element {b!r} is not binary")
        value = (value << 1) | int(b)
    return value


def slice_channel(ch: GrayImage, bpp: int = BPP) -> BitplaneStack:
    pixels = ch.pixels.astype(np.uint16)
    if int(pixels.max()) >= (1 << bpp):
        raise DomainError(f"Channel holds values >= 2**{bpp}")
    planes = tuple(Bitplane((pixels >> b) & 1) for b in range(bpp))
    return BitplaneStack(planes, bpp)


def reassemble(stack: BitplaneStack) -> GrayImage:
    acc = np.zeros(stack.shape, dtype=np.uint16)
    for b, plane in enumerate(stack.planes):
        acc |= plane.bits.astype(np.uint16) << b
    return GrayImage(acc)


def extract_msb(stack: BitplaneStack) -> Bitplane:
    return stack.planes[stack.bpp - 1]


def replace_plane(stack: BitplaneStack, index: int, plane: Bitplane) -> BitplaneStack:
    if not 0 <= index < stack.bpp:
        raise DomainError(f"Plane index {index} outside 0..{stack.bpp - 1}")
    if plane.shape != stack.shape:
        raise ShapeError(f"Plane shape {plane.shape} does not match stack shape {stack.shape}")
    planes = list(stack.planes)
    planes[index] = plane
    return BitplaneStack(tuple(planes), stack.bpp)


def replace_msb(stack: BitplaneStack, plane: Bitplane) -> BitplaneStack:
    return replace_plane(stack, stack.bpp - 1, plane)


def invert_plane(p: Bitplane) -> Bitplane:
    """Classical inverter: b -> 1 - b."""
    return Bitplane(1 - p.bits)


def plane_to_image(p: Bitplane) -> GrayImage:
    # 0 -> black, 1 -> white
    return GrayImage(p.bits * 255)


def image_to_plane(img: GrayImage) -> Bitplane:
    return Bitplane((img.pixels > 127).astype(np.uint8))
