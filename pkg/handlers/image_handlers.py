import argparse
import logging
from pathlib import Path

from config import BPP, DEFAULT_DENSITY, DEFAULT_SEED, DEFAULT_WORKERS
from handlers.helpers import (
    add_channel_flag, bpp_arg, density_arg, pick_channel, positive_int_arg, save_image, seed_arg,
)
from utils.bitplane import BitplaneStack, image_to_plane, plane_to_image, reassemble, slice_channel
from utils.errors import ImageFormatError, ShapeError
from utils.image_io import GrayImage, read_image
from utils.metrics import diff_map
from utils.noise import NoiseSpec, salt_pepper

logger = logging.getLogger(__name__)


def plane_filename(index: int) -> str:
    return f"plane{index}.pgm"


def cmd_noise(args: argparse.Namespace) -> int:
    """Writes a salt & pepper corrupted copy of the input."""
    img = read_image(args.input)
    spec = NoiseSpec(density=args.density, seed=args.seed, couple_channels=args.couple_channels)
    noisy = salt_pepper(img, spec, workers=args.workers)
    save_image(noisy, args.output)
    print(f"seed={args.seed}")
    return 0


def cmd_slice(args: argparse.Namespace) -> int:
    """Writes plane0..plane{bpp-1} renderings of one channel (highest index = MSB)."""
    img = read_image(args.input)
    stack = slice_channel(pick_channel(img, args.channel), args.bpp)
    outdir = Path(args.outdir)
    for index, plane in enumerate(stack.planes):
        save_image(plane_to_image(plane), outdir / plane_filename(index))
    logger.info(f"Sliced {stack.rows}x{stack.cols} channel into {stack.bpp} planes under {outdir}")
    return 0


def cmd_reassemble(args: argparse.Namespace) -> int:
    indir = Path(args.indir)
    planes = []
    for index in range(args.bpp):
        rendering = read_image(indir / plane_filename(index))
        if not isinstance(rendering, GrayImage):
            raise ImageFormatError(f"{plane_filename(index)} is not a grayscale rendering")
        planes.append(image_to_plane(rendering))
    save_image(reassemble(BitplaneStack(tuple(planes), args.bpp)), args.output)
    return 0


def cmd_diffmap(args: argparse.Namespace) -> int:
    """|a - b| per pixel of one channel, as a P5 rendering."""
    a, b = read_image(args.a), read_image(args.b)
    if type(a) is not type(b):
        raise ShapeError("Cannot diff a grayscale image against a colour image")
    save_image(diff_map(pick_channel(a, args.channel), pick_channel(b, args.channel)), args.output)
    return 0


def register_image_handlers(subparsers) -> None:
    p = subparsers.add_parser('noise', help='inject seeded salt & pepper noise')
    p.add_argument('input')
    p.add_argument('output')
    p.add_argument('--density', type=density_arg, default=DEFAULT_DENSITY)
    p.add_argument('--seed', type=seed_arg, default=DEFAULT_SEED)
    p.add_argument('--couple-channels', action='store_true',
                   help='corrupt all three channels of a pixel together')
    p.add_argument('--workers', type=positive_int_arg, default=DEFAULT_WORKERS)
    p.set_defaults(handler=cmd_noise)

    p = subparsers.add_parser('slice', help='write the bitplanes of one channel')
    p.add_argument('input')
    p.add_argument('outdir')
    add_channel_flag(p)
    p.add_argument('--bpp', type=bpp_arg, default=BPP)
    p.set_defaults(handler=cmd_slice)

    p = subparsers.add_parser('reassemble', help='rebuild a channel from plane renderings')
    p.add_argument('indir')
    p.add_argument('output')
    p.add_argument('--bpp', type=bpp_arg, default=BPP)
    p.set_defaults(handler=cmd_reassemble)

    p = subparsers.add_parser('diffmap', help='per-pixel absolute error map of one channel')
    p.add_argument('a')
    p.add_argument('b')
    p.add_argument('output')
    add_channel_flag(p)
    p.set_defaults(handler=cmd_diffmap)
