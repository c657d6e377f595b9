import logging
import os
import tempfile
from dataclasses import dataclass
from io import BytesIO
from pathlib import Path
from typing import Tuple, Union

import numpy as np
from PIL import Image

from utils.errors import ImageFormatError, ImageIOError, ShapeError, UnsupportedDepthError

logger = logging.getLogger(__name__)

SUPPORTED_MAXVAL = 255
_MAGIC_GRAY = b'P5'
_MAGIC_COLOR = b'P6'
_WHITESPACE = b' \t\r\n\x0b\x0c'


def _frozen_uint8(values, ndim: int) -> np.ndarray:
    arr = np.array(values, copy=True)
    if arr.ndim != ndim:
        raise ShapeError(f"Expected a {ndim}-D array, got shape {arr.shape}")
    if arr.dtype != np.uint8:
        if arr.size and (arr.min() < 0 or arr.max() > 255):
            raise ShapeError("Pixel values must lie in [0, 255]")
        arr = arr.astype(np.uint8)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class GrayImage:
    """Single 8-bit channel, row-major with a top-left origin."""
    pixels: np.ndarray

    def __post_init__(self):
        pixels = _frozen_uint8(self.pixels, 2)
        if pixels.shape[0] < 1 or pixels.shape[1] < 1:
            raise ShapeError(f"Image must be at least 1x1, got {pixels.shape}")
        object.__setattr__(self, 'pixels', pixels)

    @property
    def rows(self) -> int:
        return self.pixels.shape[0]

    @property
    def cols(self) -> int:
        return self.pixels.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.pixels.shape

    def __eq__(self, other) -> bool:
        if not isinstance(other, GrayImage):
            return NotImplemented
        return np.array_equal(self.pixels, other.pixels)


@dataclass(frozen=True, eq=False)
class ColorImage:
    """Three equally sized GrayImage channels in RGB order."""
    red: GrayImage
    green: GrayImage
    blue: GrayImage

    def __post_init__(self):
        if not (self.red.shape == self.green.shape == self.blue.shape):
            raise ShapeError(
                f"Channel shapes differ: red={self.red.shape}, green={self.green.shape}, blue={self.blue.shape}"
            )

    @classmethod
    def from_array(cls, rgb: np.ndarray) -> 'ColorImage':
        rgb = np.asarray(rgb)
        if rgb.ndim != 3 or rgb.shape[2] != 3:
            raise ShapeError(f"Expected an (rows, cols, 3) array, got {rgb.shape}")
        return cls(GrayImage(rgb[:, :, 0]), GrayImage(rgb[:, :, 1]), GrayImage(rgb[:, :, 2]))

    @property
    def rows(self) -> int:
        return self.red.rows

    @property
    def cols(self) -> int:
        return self.red.cols

    @property
    def shape(self) -> Tuple[int, int]:
        return self.red.shape

    @property
    def channels(self) -> Tuple[GrayImage, GrayImage, GrayImage]:
        return self.red, self.green, self.blue

    def to_array(self) -> np.ndarray:
        return np.stack([ch.pixels for ch in self.channels], axis=-1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ColorImage):
            return NotImplemented
        return all(a == b for a, b in zip(self.channels, other.channels))


AnyImage = Union[GrayImage, ColorImage]


def split_channels(img: ColorImage) -> Tuple[GrayImage, GrayImage, GrayImage]:
    return img.red, img.green, img.blue


def merge_channels(r: GrayImage, g: GrayImage, b: GrayImage) -> ColorImage:
    return ColorImage(r, g, b)


def _parse_header(data: bytes) -> Tuple[bytes, int, int, int]:
    """
    Validates a binary PGM/PPM header and returns (magic, cols, rows, offset),
    offset being where the raster starts. Comments ('#' to end of line) are skipped.
    """
    magic = data[:2]
    if magic not in (_MAGIC_GRAY, _MAGIC_COLOR):
        raise ImageFormatError(f"Unsupported magic {magic!r}; expected P5 or P6")

    tokens = []
    pos = 2
    while len(tokens) < 3:
        if pos >= len(data):
            raise ImageFormatError("Header ended before width, height and maxval were read")
        if data[pos] in _WHITESPACE:
            pos += 1
            continue
        if data[pos:pos + 1] == b'#':
            end = data.find(b'\n', pos)
            if end < 0:
                raise ImageFormatError("Unterminated header comment")
            pos = end + 1
            continue
        start = pos
        while pos < len(data) and data[pos] not in _WHITESPACE and data[pos:pos + 1] != b'#':
            pos += 1
        token = data[start:pos]
        if not token.isdigit():
            raise ImageFormatError(f"Invalid header field {token!r}")
        tokens.append(int(token))

    cols, rows, maxval = tokens
    if maxval != SUPPORTED_MAXVAL:
        raise UnsupportedDepthError(f"Only maxval {SUPPORTED_MAXVAL} is supported, got {maxval}")
    if rows < 1 or cols < 1:
        raise ImageFormatError(f"Invalid dimensions {cols}x{rows}")
    # exactly one whitespace byte separates maxval from the raster
    if pos < len(data) and data[pos] not in _WHITESPACE:
        raise ImageFormatError("maxval must be followed by a whitespace byte")
    return magic, cols, rows, pos + 1


def decode_image(data: bytes) -> AnyImage:
    magic, cols, rows, offset = _parse_header(data)
    mode = 'L' if magic == _MAGIC_GRAY else 'RGB'
    size = rows * cols * (1 if mode == 'L' else 3)
    if len(data) - offset < size:
        raise ImageIOError(f"Truncated payload: header promises {size} bytes, got {max(0, len(data) - offset)}")

    # length is checked above; the raw decoder carries no pixel-count cap
    try:
        image = Image.frombuffer(mode, (cols, rows), data[offset:offset + size], 'raw', mode, 0, 1)
    except (OSError, ValueError) as e:
        raise ImageIOError(f"Unreadable payload: {e}")

    arr = np.asarray(image)
    if magic == _MAGIC_GRAY:
        if arr.shape != (rows, cols):
            raise ImageIOError(f"Decoded shape {arr.shape} does not match header {rows}x{cols}")
        return GrayImage(arr)
    if arr.shape != (rows, cols, 3):
        raise ImageIOError(f"Decoded shape {arr.shape} does not match header {rows}x{cols}x3")
    return ColorImage.from_array(arr)


def encode_image(img: AnyImage) -> bytes:
    if isinstance(img, GrayImage):
        pil_image = Image.fromarray(np.ascontiguousarray(img.pixels))
    elif isinstance(img, ColorImage):
        pil_image = Image.fromarray(np.ascontiguousarray(img.to_array()))
    else:
        raise TypeError(f"Cannot encode {type(img).__name__}")
    buffer = BytesIO()
    pil_image.save(buffer, format='PPM')
    return buffer.getvalue()


def read_image(path: Union[str, Path]) -> AnyImage:
    """Reads a binary PGM (GrayImage) or PPM (ColorImage) with maxval 255."""
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as e:
        raise ImageIOError(f"Cannot read {path}: {e}")
    img = decode_image(data)
    logger.debug(f"Read {type(img).__name__} {img.rows}x{img.cols} from {path}")
    return img


def atomic_write_bytes(path: Union[str, Path], data: bytes) -> None:
    """Writes to a temporary sibling file and renames it over `path`."""
    path = Path(path)
    tmp_name = None
    try:
        fd, tmp_name = tempfile.mkstemp(prefix=f'.{path.name}.', suffix='.tmp', dir=path.parent)
        with os.fdopen(fd, 'wb') as fh:
            fh.write(data)
        os.chmod(tmp_name, 0o644)
        os.replace(tmp_name, path)
    except OSError as e:
        if tmp_name and os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise ImageIOError(f"Cannot write {path}: {e}")


def write_image(img: AnyImage, path: Union[str, Path]) -> None:
    """Writes P5 for GrayImage, P6 for ColorImage; never emits header comments."""
    atomic_write_bytes(path, encode_image(img))
    logger.debug(f"Wrote {type(img).__name__} {img.rows}x{img.cols} to {path}")
