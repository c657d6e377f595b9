"""
Counter-based deterministic randomness.

Every draw is a pure function of (seed, *keys), so per-pixel values do not
depend on traversal order or on how work is split across threads.
"""

import numpy as np

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_MASK64 = (1 << 64) - 1


def _splitmix(x: np.ndarray) -> np.ndarray:
    # SplitMix64 finalizer; uint64 arithmetic wraps
    z = x + _GOLDEN
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


def hash_keys(seed: int, *keys) -> np.ndarray:
    """Mixes a seed and any number of integer key arrays (broadcast together) into uint64 words."""
    with np.errstate(over='ignore'):
        h = _splitmix(np.array(seed & _MASK64, dtype=np.uint64))
        for key in keys:
            k = np.asarray(key).astype(np.int64).astype(np.uint64)
            h = _splitmix(h ^ k)
    return h


def uniform01(seed: int, *keys) -> np.ndarray:
    """Uniform floats in [0, 1) from the top 53 bits of the mixed words."""
    words = hash_keys(seed, *keys)
    return (words >> np.uint64(11)).astype(np.float64) * (1.0 / (1 << 53))


def grid_uniform(seed: int, rows: int, cols: int, *prefix: int) -> np.ndarray:
    """A (rows, cols) array of draws keyed by (seed, *prefix, r, c)."""
    r = np.arange(rows, dtype=np.int64)[:, None]
    c = np.arange(cols, dtype=np.int64)[None, :]
    return np.broadcast_to(uniform01(seed, *prefix, r, c), (rows, cols)).copy()


def stream(seed: int, *keys: int) -> np.random.Generator:
    """Sequential generator for scalar work, derived from (seed, *keys)."""
    return np.random.default_rng(np.random.SeedSequence([seed & _MASK64, *[k & _MASK64 for k in keys]]))
