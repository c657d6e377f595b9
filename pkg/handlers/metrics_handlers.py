import argparse
import logging

from utils.image_io import read_image
from utils.metrics import build_report, single_csv, single_table

logger = logging.getLogger(__name__)


def cmd_metrics(args: argparse.Namespace) -> int:
    """Prints MAE/MSE/PSNR of `b` measured against the reference `a`."""
    reference, candidate = read_image(args.a), read_image(args.b)
    report = build_report(reference, candidate)
    print(single_csv(report) if args.format == 'csv' else single_table(report), end='')
    return 0


def register_metrics_handlers(subparsers) -> None:
    p = subparsers.add_parser('metrics', help='MAE, MSE and PSNR of b against a')
    p.add_argument('a', help='reference image')
    p.add_argument('b', help='image under test')
    p.add_argument('--format', choices=('csv', 'table'), default='csv')
    p.set_defaults(handler=cmd_metrics)
