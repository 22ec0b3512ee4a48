from __future__ import annotations

from typing import Union

import numpy as np

SeedLike = Union[int, np.random.Generator, None]


def as_rng(seed: SeedLike) -> np.random.Generator:
    """Pass generators through untouched; wrap ints (or None) in a fresh PCG64."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)
