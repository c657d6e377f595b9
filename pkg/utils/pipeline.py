"""
End-to-end denoising flows and the classical vs quantum-Boolean comparison.

Classical: each 8-bit channel goes through the averaging kernel.
Quantum-Boolean: each channel is sliced, its MSB crosses the classical-to-quantum
interface, is majority-filtered as CBS, read back through the quantum-to-classical
interface and reassembled with the seven untouched lower planes.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from config import (
    BPP, CHANNEL_NAMES, DEFAULT_DENSITY, DEFAULT_PASSES, DEFAULT_SEED, DEFAULT_WINDOW,
    DEFAULT_WORKERS, REPORT_CHANNEL, TOOL_NAME, TOOL_VERSION,
)
from utils.bitplane import Bitplane, reassemble, replace_plane, slice_channel
from utils.errors import DomainError
from utils.filters import KernelSpec, mean_filter, qbmf_quantum
from utils.image_io import AnyImage, ColorImage, GrayImage
from utils.metrics import MetricsReport, build_report, diff_map
from utils.noise import NoiseSpec, salt_pepper
from utils.qsim import amplitude_plane, c2q_plane, q2c_plane
from utils.rng import hash_keys

logger = logging.getLogger(__name__)

# Domain-separation key for measurement sub-streams
_MEASURE_KEY = 0x0251


@dataclass(frozen=True)
class ExperimentConfig:
    window: int = DEFAULT_WINDOW
    passes: int = DEFAULT_PASSES
    noise: NoiseSpec = field(default_factory=NoiseSpec)
    bpp: int = BPP
    strict_cbs: bool = True
    seed: int = DEFAULT_SEED
    workers: int = DEFAULT_WORKERS
    report_channel: str = REPORT_CHANNEL
    # debug only: route this plane through the quantum stages instead of the MSB
    route_plane: Optional[int] = None

    def __post_init__(self):
        KernelSpec(self.window)
        if self.passes < 1:
            raise DomainError(f"passes must be >= 1, got {self.passes}")
        if not 1 <= self.bpp <= BPP:
            raise DomainError(f"bpp must lie in 1..{BPP}, got {self.bpp}")
        if self.workers < 1:
            raise DomainError(f"workers must be >= 1, got {self.workers}")
        if self.report_channel not in CHANNEL_NAMES:
            raise DomainError(f"report_channel must be one of {CHANNEL_NAMES}, got {self.report_channel!r}")
        if self.route_plane is not None and not 0 <= self.route_plane < self.bpp:
            raise DomainError(f"route_plane must lie in 0..{self.bpp - 1}, got {self.route_plane}")

    @classmethod
    def create(cls, density: float = DEFAULT_DENSITY, seed: int = DEFAULT_SEED,
               couple_channels: bool = False, **kwargs) -> 'ExperimentConfig':
        """Builds a config whose noise realization shares the experiment seed."""
        noise = NoiseSpec(density=density, seed=seed, couple_channels=couple_channels)
        return cls(noise=noise, seed=seed, **kwargs)

    @property
    def kernel(self) -> KernelSpec:
        return KernelSpec(self.window)

    @property
    def plane_index(self) -> int:
        return self.bpp - 1 if self.route_plane is None else self.route_plane


@dataclass(frozen=True)
class ChannelStages:
    """Intermediate artifacts of one channel's trip through the quantum stages."""
    plane_in: Bitplane
    alpha_in: GrayImage
    alpha_out: GrayImage
    plane_out: Bitplane


@dataclass(frozen=True)
class ComparisonResult:
    noisy: AnyImage
    classical_image: AnyImage
    quantum_boolean_image: AnyImage
    classical: MetricsReport
    quantum_boolean: MetricsReport
    noisy_baseline: MetricsReport
    diff_maps: Dict[str, GrayImage]
    stages: ChannelStages
    # routed plane of the clean report channel, before any noise
    plane_original: Bitplane
    provenance: Dict[str, str]


def _channels(img: AnyImage) -> Tuple[GrayImage, ...]:
    return img.channels if isinstance(img, ColorImage) else (img,)


def _rebuild(img: AnyImage, channels: Sequence[GrayImage]) -> AnyImage:
    return ColorImage(*channels) if isinstance(img, ColorImage) else channels[0]


def _map_channels(fn: Callable[[int, GrayImage], object], img: AnyImage, workers: int) -> List:
    """Applies fn(index, channel) to every channel; ordering of results is fixed."""
    chans = _channels(img)
    if workers > 1 and len(chans) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, range(len(chans)), chans))
    return [fn(i, ch) for i, ch in enumerate(chans)]


def classical_denoise(img: AnyImage, cfg: ExperimentConfig) -> AnyImage:
    """Averaging kernel on each full 8-bit channel, `passes` times."""
    k = cfg.kernel

    def run(_: int, ch: GrayImage) -> GrayImage:
        for _pass in range(cfg.passes):
            ch = mean_filter(ch, k)
        return ch

    return _rebuild(img, _map_channels(run, img, cfg.workers))


def _measurement_seed(cfg: ExperimentConfig, channel: int) -> int:
    return int(hash_keys(cfg.seed, _MEASURE_KEY, channel))


def quantum_boolean_channel(ch: GrayImage, cfg: ExperimentConfig, channel: int = 0) -> Tuple[GrayImage, ChannelStages]:
    """
    slice -> MSB -> C2QI -> majority filter on CBS (x passes) -> Q2CI -> replace MSB -> reassemble.
    The lower planes never touch the interfaces.
    """
    k = cfg.kernel
    index = cfg.plane_index
    stack = slice_channel(ch, cfg.bpp)
    plane_in = stack.planes[index]

    in_machine = c2q_plane(plane_in)
    alpha_in = amplitude_plane(in_machine)
    for _pass in range(cfg.passes):
        in_machine = qbmf_quantum(in_machine, k)
    alpha_out = amplitude_plane(in_machine)
    plane_out = q2c_plane(in_machine, seed=_measurement_seed(cfg, channel), strict=cfg.strict_cbs)

    out = reassemble(replace_plane(stack, index, plane_out))
    flipped = int((plane_in.bits != plane_out.bits).sum())
    logger.debug(f"Channel {channel}: plane {index} filtered, {flipped} bits flipped")
    return out, ChannelStages(plane_in, alpha_in, alpha_out, plane_out)


def _report_index(img: AnyImage, cfg: ExperimentConfig) -> int:
    return CHANNEL_NAMES.index(cfg.report_channel) if isinstance(img, ColorImage) else 0


def _report_channel(img: AnyImage, cfg: ExperimentConfig) -> GrayImage:
    return _channels(img)[_report_index(img, cfg)]


def quantum_boolean_run(img: AnyImage, cfg: ExperimentConfig) -> Tuple[AnyImage, ChannelStages]:
    """One pass over every channel; also hands back the stages of the report channel."""
    results = _map_channels(lambda i, ch: quantum_boolean_channel(ch, cfg, i), img, cfg.workers)
    return _rebuild(img, [out for out, _ in results]), results[_report_index(img, cfg)][1]


def quantum_boolean_denoise(img: AnyImage, cfg: ExperimentConfig) -> AnyImage:
    return quantum_boolean_run(img, cfg)[0]


def stage_artifacts(img: AnyImage, cfg: ExperimentConfig) -> ChannelStages:
    """Plane/amplitude renderings of the report channel (red for a colour image)."""
    index = _report_index(img, cfg)
    return quantum_boolean_channel(_channels(img)[index], cfg, index)[1]


def provenance(cfg: ExperimentConfig, img: AnyImage) -> Dict[str, str]:
    return {
        'tool': TOOL_NAME,
        'version': TOOL_VERSION,
        'seed': str(cfg.seed),
        'density': repr(float(cfg.noise.density)),
        'couple_channels': str(cfg.noise.couple_channels).lower(),
        'window': str(cfg.window),
        'passes': str(cfg.passes),
        'bpp': str(cfg.bpp),
        'plane': str(cfg.plane_index),
        'strict_cbs': str(cfg.strict_cbs).lower(),
        'report_channel': cfg.report_channel,
        'rows': str(img.rows),
        'cols': str(img.cols),
        'channels': str(len(_channels(img))),
    }


def provenance_text(result: ComparisonResult) -> str:
    return ''.join(f"{key}={value}\n" for key, value in result.provenance.items())


def run_comparison(original: AnyImage, cfg: ExperimentConfig) -> ComparisonResult:
    """Corrupts `original`, denoises it both ways and scores everything against the clean input."""
    noisy = salt_pepper(original, cfg.noise, workers=cfg.workers)
    classical_image = classical_denoise(noisy, cfg)
    quantum_image, stages = quantum_boolean_run(noisy, cfg)

    reference = _report_channel(original, cfg)
    diff_maps = {
        'noisy': diff_map(reference, _report_channel(noisy, cfg)),
        'classical': diff_map(reference, _report_channel(classical_image, cfg)),
        'quantum_boolean': diff_map(reference, _report_channel(quantum_image, cfg)),
    }
    result = ComparisonResult(
        noisy=noisy,
        classical_image=classical_image,
        quantum_boolean_image=quantum_image,
        classical=build_report(original, classical_image),
        quantum_boolean=build_report(original, quantum_image),
        noisy_baseline=build_report(original, noisy),
        diff_maps=diff_maps,
        stages=stages,
        plane_original=slice_channel(reference, cfg.bpp).planes[cfg.plane_index],
        provenance=provenance(cfg, original),
    )
    logger.info(
        f"PSNR noisy={result.noisy_baseline.psnr:.4f} classical={result.classical.psnr:.4f} "
        f"quantum_boolean={result.quantum_boolean.psnr:.4f} dB"
    )
    return result
