"""Portable counter-based random numbers (splitmix64).

Every stochastic piece of the package (shot sampling, graph generation)
draws from this generator instead of a platform RNG so that identical
seeds give identical results across machines and backend paths.  The
value for counter position t is a pure function of (seed, t), which is
what makes the streams splittable: disjoint counter ranges never
interact.
"""

from __future__ import annotations

import numpy as np

_MASK = 0xFFFFFFFFFFFFFFFF
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_INV_2_53 = 1.0 / (1 << 53)


def mix64(z: int) -> int:
    """splitmix64 finalizer on a 64-bit integer."""
    z &= _MASK
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK
    return z ^ (z >> 31)


def value_at(seed: int, counter: int) -> int:
    """The counter-th 64-bit output of the stream keyed by seed."""
    return mix64((seed + (counter + 1) * _GAMMA) & _MASK)


def uniform_at(seed: int, counter: int) -> float:
    """The counter-th uniform double in [0, 1)."""
    return (value_at(seed, counter) >> 11) * _INV_2_53


def uniform_block(seed: int, start: int, count: int) -> np.ndarray:
    """Vectorized uniforms for counters start .. start+count-1."""
    idx = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    z = (np.uint64(seed & _MASK) + idx * np.uint64(_GAMMA)).astype(np.uint64)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
    z = z ^ (z >> np.uint64(31))
    return (z >> np.uint64(11)).astype(np.float64) * _INV_2_53


class Stream:
    """Sequential view over a splitmix64 counter stream."""

    def __init__(self, seed: int, counter: int = 0):
        self.seed = seed & _MASK
        self.counter = counter

    def next_uniform(self) -> float:
        u = uniform_at(self.seed, self.counter)
        self.counter += 1
        return u

    def next_below(self, bound: int) -> int:
        """Uniform integer in [0, bound); bound must be small (< 2^32)."""
        return int(self.next_uniform() * bound)

    def derive(self, *salts: int) -> int:
        """Deterministic child seed from this stream's seed and salt values."""
        z = self.seed
        for s in salts:
            z = mix64((z ^ (s & _MASK)) + _GAMMA)
        return z


def derive_seed(seed: int, *salts: int) -> int:
    return Stream(seed).derive(*salts)
