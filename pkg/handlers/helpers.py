import argparse
import logging
from pathlib import Path
from typing import Union

from config import CHANNEL_NAMES
from utils.errors import DomainError
from utils.filters import KernelSpec
from utils.image_io import AnyImage, ColorImage, GrayImage, atomic_write_bytes, write_image

logger = logging.getLogger(__name__)

CHANNEL_FLAGS = {'r': 'red', 'g': 'green', 'b': 'blue'}


# --- argparse type validators: failures become usage errors (exit 2) ---

def density_arg(raw: str) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid density {raw!r}")
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"density must lie in [0, 1], got {value}")
    return value


def window_arg(raw: str) -> int:
    try:
        value = int(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid window {raw!r}")
    try:
        KernelSpec(value)
    except DomainError as e:
        raise argparse.ArgumentTypeError(str(e))
    return value


def positive_int_arg(raw: str) -> int:
    try:
        value = int(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {raw!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def seed_arg(raw: str) -> int:
    try:
        value = int(raw, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {raw!r}")
    if not 0 <= value < (1 << 64):
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned value")
    return value


def bpp_arg(raw: str) -> int:
    value = positive_int_arg(raw)
    if value > 8:
        raise argparse.ArgumentTypeError(f"bpp must lie in 1..8, got {value}")
    return value


def add_channel_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--channel', choices=sorted(CHANNEL_FLAGS), default='r',
                        help='colour channel (ignored for grayscale input)')


def pick_channel(img: AnyImage, flag: str) -> GrayImage:
    if isinstance(img, GrayImage):
        return img
    return img.channels[CHANNEL_NAMES.index(CHANNEL_FLAGS[flag])]


def image_suffix(img: AnyImage) -> str:
    return '.ppm' if isinstance(img, ColorImage) else '.pgm'


def save_image(img: AnyImage, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    write_image(img, path)
    logger.info(f"Saved {path}")
    return path


def save_text(text: str, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    atomic_write_bytes(path, text.encode('utf-8'))
    logger.info(f"Saved {path}")
    return path
