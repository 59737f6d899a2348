"""Deterministic random-stream derivation for Monte Carlo ensembles.

Every realization in an ensemble gets its own generator, keyed by
``(master_seed, realization_index)`` through a SplitMix64 mixing step.
Because a realization's stream depends only on its index, results do not
depend on execution order, chunking, or worker count, and any single
realization can be regenerated in isolation.

Gaussian variates are produced by inverse-CDF transform of open-interval
uniforms (53-bit integers offset by 1/2), which keeps the draw sequence
a pure function of the stream and avoids rejection-sampling branches.
This choice is fixed for the package; changing it would silently change
every seeded result.
"""

from __future__ import annotations

import numpy as np
from scipy.special import ndtri

_MASK64 = (1 << 64) - 1
_GOLDEN_GAMMA = 0x9E3779B97F4A7C15

_TWO53 = float(1 << 53)


def splitmix64(state: int) -> int:
    """One SplitMix64 output for the given 64-bit state."""
    z = (state + _GOLDEN_GAMMA) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def stream_seed(master_seed: int, index: int) -> int:
    """64-bit stream seed for realization ``index`` under ``master_seed``."""
    return splitmix64((master_seed + (index + 1) * _GOLDEN_GAMMA) & _MASK64)


def stream_generator(master_seed: int, index: int) -> np.random.Generator:
    """Independent generator for one realization of an ensemble."""
    return np.random.Generator(np.random.PCG64(stream_seed(master_seed, index)))


def generator_from_seed(seed: int) -> np.random.Generator:
    """Generator for a raw 64-bit stream seed (single-trajectory use)."""
    return np.random.Generator(np.random.PCG64(seed & _MASK64))


def open_uniform(rng: np.random.Generator, size: int) -> np.ndarray:
    """Uniforms strictly inside (0, 1), safe to feed the inverse CDF."""
    return (rng.integers(0, 1 << 53, size=size, dtype=np.int64) + 0.5) / _TWO53


def standard_normals(rng: np.random.Generator, size: int) -> np.ndarray:
    """N(0,1) draws via inverse CDF (the package-wide Gaussian sampler)."""
    return ndtri(open_uniform(rng, size))
