"""Counter-based deterministic random draws.

Every value is a pure function of (seed, index), built on the splitmix64
output mix, so streams do not depend on evaluation order, chunk size, or
threading. The numba kernels re-implement the same integer pipeline, which
keeps results bit-identical across backends and platforms.
"""

from __future__ import annotations

import numpy as np

GOLDEN = np.uint64(0x9E3779B97F4A7C15)
MIX_1 = np.uint64(0xBF58476D1CE4E5B9)
MIX_2 = np.uint64(0x94D049BB133111EB)
INV_2_53 = 1.0 / float(1 << 53)

_MASK64 = (1 << 64) - 1


def mix64(x: np.ndarray) -> np.ndarray:
    """splitmix64 output mix of a uint64 array (wrapping arithmetic)."""
    x = x + GOLDEN
    x = (x ^ (x >> np.uint64(30))) * MIX_1
    x = (x ^ (x >> np.uint64(27))) * MIX_2
    return x ^ (x >> np.uint64(31))


def seed_base(seed: int) -> np.uint64:
    """Per-seed stream offset; accepts any Python integer."""
    # scalar uint64 ops emit overflow warnings, so go through a 1-element array
    return mix64(np.array([int(seed) & _MASK64], dtype=np.uint64))[0]


def uniforms_at(seed: int, indices) -> np.ndarray:
    """Uniform [0, 1) doubles at the given counter indices."""
    idx = np.asarray(indices, dtype=np.uint64)
    bits = mix64(seed_base(seed) + idx * GOLDEN)
    return (bits >> np.uint64(11)).astype(np.float64) * INV_2_53
