"""
Min-hash builder - one sampled pillar per offset
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ...models import BuildAlgorithm, BuildOutcome, Instance, TrackLayout
from ..randomness import make_rng
from .base import BaseTrackBuilder

# Offsets handled per vectorised argmin
BLOCK_SIZE = 4096

_RANK_MAX = np.iinfo(np.uint64).max


@dataclass
class MinHashState:
    """Pseudorandom 64-bit rank for every position 1..l (ranks[j - 1] belongs to position j)"""
    ranks: np.ndarray

    @classmethod
    def draw(cls, track_length: int, seed: int) -> 'MinHashState':
        rng = make_rng(seed, "minhash")
        ranks = rng.integers(0, _RANK_MAX, size=track_length, dtype=np.uint64, endpoint=True)
        return cls(ranks=ranks)

    @staticmethod
    def rank_quantile_threshold(fraction: float) -> int:
        """Rank below which a uniform 64-bit value falls with probability `fraction`"""
        if not 0.0 <= fraction <= 1.0:
            raise ValueError(f"fraction must lie in [0, 1], got {fraction}")
        return min(int(_RANK_MAX), int(fraction * 2.0 ** 64))

    def rank_of(self, position: int) -> int:
        return int(self.ranks[position - 1])

    def sample(self, instance: Instance) -> np.ndarray:
        """Sorted distinct positions argmin_{s in C + k} rank(s) over all offsets k"""
        wheels = instance.car.wheel_array()
        chosen = []
        for start in range(0, instance.offset_count, BLOCK_SIZE):
            offsets = np.arange(start, min(start + BLOCK_SIZE, instance.offset_count), dtype=np.int64)
            positions = offsets[:, None] + wheels[None, :]
            # wheels are sorted, so the first minimum is the smaller position
            picks = np.argmin(self.ranks[positions - 1], axis=1)
            chosen.append(positions[np.arange(len(offsets)), picks])
        return np.unique(np.concatenate(chosen))


class MinHashBuilder(BaseTrackBuilder):
    algorithm = BuildAlgorithm.MINHASH

    def _construct(self, instance: Instance, seed: Optional[int]) -> BuildOutcome:
        state = MinHashState.draw(instance.track_length, seed)
        mask = np.zeros(instance.track_length + 1, dtype=bool)
        mask[state.sample(instance)] = True

        track = TrackLayout.from_mask(mask)
        return BuildOutcome(
            track=track,
            algorithm=self.algorithm,
            pillar_count=track.size,
            seed=seed,
        )


def build_minhash(instance: Instance, seed: int) -> BuildOutcome:
    return MinHashBuilder().build(instance, seed)
