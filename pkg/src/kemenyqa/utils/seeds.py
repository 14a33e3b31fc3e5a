"""Seed derivation helpers."""
from typing import Optional

import numpy as np


def derive_seed(seed: Optional[int], *keys: int) -> int:
    """Derive a child seed from a master seed and integer keys."""
    entropy = [0 if seed is None else int(seed), *[int(k) for k in keys]]
    return int(np.random.SeedSequence(entropy).generate_state(1, dtype=np.uint64)[0])


def make_rng(seed: Optional[int], *keys: int) -> np.random.Generator:
    """Create a generator seeded from (seed, *keys)."""
    return np.random.default_rng(derive_seed(seed, *keys))
