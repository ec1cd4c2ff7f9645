"""
Seeded random streams

Every random draw in gaptrack comes from a PCG64 generator whose state is
derived by numpy's SeedSequence from a 64-bit seed and a tuple of tags.
Each component is split into two 32-bit words so call sites with a fixed
tag arity never collide.
"""

import zlib
from enum import Enum
from typing import List, Union

import numpy as np

from ..models import SEED_MAX

Tag = Union[int, str, Enum]

_WORD = 0xFFFFFFFF


def _words(value: Tag) -> List[int]:
    if isinstance(value, Enum):
        value = value.value
    if isinstance(value, str):
        return [zlib.crc32(value.encode('utf-8')), 0]
    value = int(value)
    if value < 0 or value > SEED_MAX:
        raise ValueError(f"seed component out of 64-bit range: {value}")
    return [value & _WORD, (value >> 32) & _WORD]


def seed_sequence(seed: int, *tags: Tag) -> np.random.SeedSequence:
    entropy: List[int] = []
    for component in (seed, *tags):
        entropy.extend(_words(component))
    return np.random.SeedSequence(entropy)


def make_rng(seed: int, *tags: Tag) -> np.random.Generator:
    """PCG64 generator for the stream named by (seed, tags)"""
    return np.random.Generator(np.random.PCG64(seed_sequence(seed, *tags)))


def derive_seed(seed: int, *tags: Tag) -> int:
    """Mix (seed, tags) into a fresh 64-bit seed"""
    return int(seed_sequence(seed, *tags).generate_state(1, dtype=np.uint64)[0])
