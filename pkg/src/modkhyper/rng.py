"""Seeded random streams.

Every random draw in the package comes from a PCG64 generator (numpy)
keyed by ``(master seed, purpose tag, counters...)``.  Tags are hashed with
CRC-32 so the mapping is stable across interpreters and platforms, and the
resulting streams are statistically independent via ``SeedSequence``.
"""

from __future__ import annotations

import zlib

import numpy as np

MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    """One round of the SplitMix64 finalizer (Steele, Lea, Flood 2014)."""
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


def trial_seed(master_seed: int, index: int) -> int:
    """Per-trial seed: ``splitmix64(master ^ splitmix64(index))``."""
    return splitmix64((master_seed & MASK64) ^ splitmix64(index & MASK64))


def _sequence(seed: int, tag: str, counters: tuple[int, ...]) -> np.random.SeedSequence:
    if seed < 0:
        raise ValueError("seed must be a non-negative 64-bit integer")
    key = (zlib.crc32(tag.encode("utf-8")),) + tuple(int(c) for c in counters)
    return np.random.SeedSequence(entropy=seed & MASK64, spawn_key=key)


def stream(seed: int, tag: str, *counters: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(_sequence(seed, tag, counters)))


def derive_seed(seed: int, tag: str, *counters: int) -> int:
    """A 64-bit child seed, for handing to another seeded operation."""
    lo, hi = _sequence(seed, tag, counters).generate_state(2, np.uint32)
    return (int(hi) << 32) | int(lo)
