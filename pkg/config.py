import os
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw.strip())
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}")


def _env_float(name: str, default: float) -> float:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return float(raw.strip())
    except ValueError:
        raise ValueError(f"{name} must be a number, got {raw!r}")


TOOL_NAME = 'qubo-denoise'
TOOL_VERSION = '1.0.0'

# Уровень логирования из переменной окружения (например, INFO, DEBUG, WARNING)
LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO').upper()

BASE_DIR = Path(__file__).parent

# Experiment defaults (overridable from .env, and again from CLI flags)
DEFAULT_SEED = _env_int('QBD_SEED', 20170519)
DEFAULT_DENSITY = _env_float('QBD_DENSITY', 0.05)
DEFAULT_WINDOW = _env_int('QBD_WINDOW', 3)
DEFAULT_PASSES = _env_int('QBD_PASSES', 1)
DEFAULT_WORKERS = _env_int('QBD_WORKERS', 1)
REPORT_CHANNEL = os.getenv('QBD_REPORT_CHANNEL', 'red').strip().lower()
if REPORT_CHANNEL not in ('red', 'green', 'blue'):
    raise ValueError(f"QBD_REPORT_CHANNEL must be red, green or blue, got {REPORT_CHANNEL!r}")

# Raster settings
BPP = 8  # bits per sample; bitplane BPP-1 is the MSB
PEAK_VALUE = (1 << BPP) - 1
SALT_VALUE = 255
PEPPER_VALUE = 0

# Numerical tolerances
ALGEBRA_TOLERANCE = 1e-12  # normalization, completeness, probability sums
CBS_TOLERANCE = 1e-9       # |alpha| in {0, 1} classification

# Report settings
TABLE_DECIMALS = 4  # the published comparison tables use 4 decimals
CHANNEL_NAMES = ('red', 'green', 'blue')
