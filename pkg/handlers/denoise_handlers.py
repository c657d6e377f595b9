import argparse
import logging

from config import (
    BPP, DEFAULT_DENSITY, DEFAULT_PASSES, DEFAULT_SEED, DEFAULT_WINDOW, DEFAULT_WORKERS,
)
from handlers.helpers import (
    CHANNEL_FLAGS, add_channel_flag, density_arg, image_suffix, positive_int_arg, save_image,
    save_text, seed_arg, window_arg,
)
from utils.bitplane import plane_to_image
from utils.image_io import read_image
from utils.metrics import comparison_csv, comparison_table
from utils.pipeline import (
    ExperimentConfig, classical_denoise, provenance_text, quantum_boolean_run, run_comparison,
)

logger = logging.getLogger(__name__)

METHODS = ('mean', 'qbmf')


def _route_plane_arg(raw: str) -> int:
    value = int(raw)
    if not 0 <= value < BPP:
        raise argparse.ArgumentTypeError(f"plane must lie in 0..{BPP - 1}")
    return value


def _write_stages(stages, prefix: str) -> None:
    save_image(plane_to_image(stages.plane_in), f"{prefix}stage_plane_in.pgm")
    save_image(stages.alpha_in, f"{prefix}stage_alpha_in.pgm")
    save_image(stages.alpha_out, f"{prefix}stage_alpha_out.pgm")
    save_image(plane_to_image(stages.plane_out), f"{prefix}stage_plane_out.pgm")


def cmd_denoise(args: argparse.Namespace) -> int:
    img = read_image(args.input)
    cfg = ExperimentConfig.create(
        seed=args.seed, window=args.window, passes=args.passes, workers=args.workers,
        route_plane=args.route_plane, report_channel=CHANNEL_FLAGS[args.channel],
    )
    if args.method == 'mean':
        out = classical_denoise(img, cfg)
    else:
        out, stages = quantum_boolean_run(img, cfg)
        if args.dump_stages:
            _write_stages(stages, args.dump_stages)
    save_image(out, args.output)
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    """Full classical vs quantum-Boolean experiment with every artifact written under --out-prefix."""
    original = read_image(args.original)
    cfg = ExperimentConfig.create(
        density=args.density, seed=args.seed, couple_channels=args.couple_channels,
        window=args.window, passes=args.passes, workers=args.workers,
        report_channel=CHANNEL_FLAGS[args.channel],
    )
    result = run_comparison(original, cfg)

    prefix = args.out_prefix
    columns = {'classical': result.classical, 'quantum_boolean': result.quantum_boolean}
    csv_text = comparison_csv(columns)
    table_text = comparison_table(columns)
    save_text(csv_text, f"{prefix}metrics.csv")
    save_text(table_text, f"{prefix}metrics.txt")
    save_text(comparison_csv({'noisy': result.noisy_baseline}), f"{prefix}noisy_metrics.csv")
    save_text(provenance_text(result), f"{prefix}provenance.txt")

    suffix = image_suffix(original)
    save_image(result.noisy, f"{prefix}noisy{suffix}")
    save_image(result.classical_image, f"{prefix}classical{suffix}")
    save_image(result.quantum_boolean_image, f"{prefix}quantum_boolean{suffix}")
    for name, dmap in result.diff_maps.items():
        save_image(dmap, f"{prefix}diff_{name}.pgm")
    _write_stages(result.stages, prefix)
    save_image(plane_to_image(result.plane_original), f"{prefix}stage_plane_original.pgm")

    print(f"seed={cfg.seed}")
    print(csv_text if args.format == 'csv' else table_text, end='')
    return 0


def _add_experiment_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument('--window', type=window_arg, default=DEFAULT_WINDOW)
    p.add_argument('--passes', type=positive_int_arg, default=DEFAULT_PASSES)
    p.add_argument('--seed', type=seed_arg, default=DEFAULT_SEED)
    p.add_argument('--workers', type=positive_int_arg, default=DEFAULT_WORKERS)
    add_channel_flag(p)


def register_denoise_handlers(subparsers) -> None:
    p = subparsers.add_parser('denoise', help='run the classical or quantum-Boolean filter')
    p.add_argument('input')
    p.add_argument('output')
    p.add_argument('--method', choices=METHODS, default='qbmf')
    _add_experiment_flags(p)
    p.add_argument('--route-plane', type=_route_plane_arg, default=None,
                   help=argparse.SUPPRESS)
    p.add_argument('--dump-stages', metavar='PREFIX', default=None,
                   help='also write plane/amplitude renderings of --channel with this path prefix')
    p.set_defaults(handler=cmd_denoise)

    p = subparsers.add_parser('compare', help='noise, denoise both ways and report MAE/MSE/PSNR')
    p.add_argument('original')
    p.add_argument('--density', type=density_arg, default=DEFAULT_DENSITY)
    p.add_argument('--couple-channels', action='store_true')
    _add_experiment_flags(p)
    p.add_argument('--out-prefix', default='compare_',
                   help='path prefix for every emitted file')
    p.add_argument('--format', choices=('csv', 'table'), default='table')
    p.set_defaults(handler=cmd_compare)
