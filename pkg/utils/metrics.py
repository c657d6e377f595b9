import logging
import math
from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

from config import BPP, TABLE_DECIMALS
from utils.errors import ShapeError
from utils.image_io import AnyImage, ColorImage, GrayImage

logger = logging.getLogger(__name__)

METRIC_NAMES = ('MAE', 'MSE', 'PSNR')


@dataclass(frozen=True)
class MetricsReport:
    mae: float
    mse: float
    psnr: float  # math.inf when mse == 0
    rows: int
    cols: int
    channels: int
    peak: int

    def values(self) -> Dict[str, float]:
        return {'MAE': self.mae, 'MSE': self.mse, 'PSNR': self.psnr}


def _samples(a: AnyImage, b: AnyImage) -> Tuple[np.ndarray, np.ndarray]:
    if type(a) is not type(b):
        raise ShapeError(f"Cannot compare {type(a).__name__} with {type(b).__name__}")
    if a.shape != b.shape:
        raise ShapeError(f"Image shapes differ: {a.shape} vs {b.shape}")
    if isinstance(a, ColorImage):
        return a.to_array().astype(np.int64), b.to_array().astype(np.int64)
    return a.pixels.astype(np.int64), b.pixels.astype(np.int64)


def mae(a: AnyImage, b: AnyImage) -> float:
    """Mean absolute error over R*C samples (R*C*3 for colour)."""
    x, y = _samples(a, b)
    # integer sums are exact, so the result is independent of reduction order
    return float(np.abs(x - y).sum()) / x.size


def mse(a: AnyImage, b: AnyImage) -> float:
    x, y = _samples(a, b)
    d = x - y
    return float((d * d).sum()) / x.size


def psnr_from_mse(mse_value: float, bits: int = BPP) -> float:
    if mse_value == 0:
        return math.inf
    peak = (1 << bits) - 1
    return 10.0 * math.log10(peak * peak / mse_value)


def psnr(a: AnyImage, b: AnyImage, bits: int = BPP) -> float:
    """10*log10(peak^2 / MSE) with peak = 2^bits - 1; +inf for identical images."""
    return psnr_from_mse(mse(a, b), bits)


def diff_map(a: GrayImage, b: GrayImage) -> GrayImage:
    if not isinstance(a, GrayImage) or not isinstance(b, GrayImage):
        raise ShapeError("diff_map expects two single-channel images")
    x, y = _samples(a, b)
    return GrayImage(np.clip(np.abs(x - y), 0, 255))


def build_report(reference: AnyImage, candidate: AnyImage, bits: int = BPP) -> MetricsReport:
    mae_value = mae(reference, candidate)
    mse_value = mse(reference, candidate)
    return MetricsReport(
        mae=mae_value,
        mse=mse_value,
        psnr=psnr_from_mse(mse_value, bits),
        rows=reference.rows,
        cols=reference.cols,
        channels=3 if isinstance(reference, ColorImage) else 1,
        peak=(1 << bits) - 1,
    )


def format_value(x: float) -> str:
    """Full-precision CSV rendering: integers without a fraction, infinity as 'inf'."""
    if math.isinf(x):
        return 'inf' if x > 0 else '-inf'
    if float(x).is_integer():
        return str(int(x))
    return repr(float(x))


def format_fixed(x: float, decimals: int = TABLE_DECIMALS) -> str:
    if math.isinf(x):
        return 'inf' if x > 0 else '-inf'
    return f"{x:.{decimals}f}"


def single_csv(report: MetricsReport) -> str:
    lines = ['metric,value']
    lines += [f"{name},{format_value(value)}" for name, value in report.values().items()]
    return '\n'.join(lines) + '\n'


def single_table(report: MetricsReport) -> str:
    width = max(len(n) for n in METRIC_NAMES)
    lines = [f"{name:<{width}}  {format_fixed(value):>12}" for name, value in report.values().items()]
    return '\n'.join(lines) + '\n'


def comparison_csv(columns: Dict[str, MetricsReport]) -> str:
    """Rows MAE/MSE/PSNR, one column per method, in insertion order."""
    header = ','.join(['metric', *columns])
    lines = [header]
    for name in METRIC_NAMES:
        cells = [format_value(report.values()[name]) for report in columns.values()]
        lines.append(','.join([name, *cells]))
    return '\n'.join(lines) + '\n'


def comparison_table(columns: Dict[str, MetricsReport]) -> str:
    """Aligned text rendering with 4 decimals, the layout of the published tables."""
    names = list(columns)
    widths = [max(len(n), 12) for n in names]
    label_width = max(len('metric'), *(len(n) for n in METRIC_NAMES))
    header = f"{'metric':<{label_width}}  " + '  '.join(f"{n:>{w}}" for n, w in zip(names, widths))
    lines = [header, '-' * len(header)]
    for metric in METRIC_NAMES:
        cells = '  '.join(
            f"{format_fixed(columns[n].values()[metric]):>{w}}" for n, w in zip(names, widths)
        )
        lines.append(f"{metric:<{label_width}}  {cells}")
    return '\n'.join(lines) + '\n'
