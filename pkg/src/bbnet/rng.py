"""Seeded random streams.

Every random draw in bbnet comes from NumPy's PCG64 bit generator. Each
generator is seeded by a ``SeedSequence`` whose entropy is the 64-bit
network seed and whose spawn key names a purpose. Streams for different
purposes are statistically independent, and adding draws to one stream
never shifts another.

Derived seeds (per benchmark run, per regeneration attempt) are the first
64-bit word of ``SeedSequence([seed, *keys]).generate_state``.
"""

from __future__ import annotations

import numpy as np

STRUCTURE = 0  # rules and links
ASSIGNMENT = 1  # fact-to-container placement
VALUES = 2  # initial fact values and rule literals
PAIRS = 3  # benchmark pair sampling

MASK64 = (1 << 64) - 1


def stream(seed: int, purpose: int) -> np.random.Generator:
    seq = np.random.SeedSequence(entropy=int(seed) & MASK64, spawn_key=(purpose,))
    return np.random.Generator(np.random.PCG64(seq))


def derive_seed(seed: int, *keys: int) -> int:
    seq = np.random.SeedSequence([int(seed) & MASK64, *(int(k) for k in keys)])
    return int(seq.generate_state(1, dtype=np.uint64)[0])
