"""Deterministic seed derivation.

Every derived stream is keyed by ``mix64(master, index)``, a SplitMix64
finalizer over ``master + (index + 1) * GOLDEN``. The constants are fixed
so derived seeds never change between releases.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def mix64(master: int, index: int) -> int:
    z = (master + (index + 1) * GOLDEN) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed & MASK64))
