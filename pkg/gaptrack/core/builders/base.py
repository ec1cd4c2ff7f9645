"""
Base Track Builder - Abstract base class for all track construction algorithms
"""

import logging
import math
from abc import ABC, abstractmethod
from typing import Optional

import numpy as np

from ...errors import GapTrackError
from ...models import SEED_MAX, BuildAlgorithm, BuildOutcome, Instance
from ..verifier import coverage

logger = logging.getLogger(__name__)


def alteration_probability(n: int) -> float:
    """Install probability min(1, ln n / n); zero for a single wheel"""
    return min(1.0, math.log(n) / n)


def expected_alteration_count(instance: Instance, q: float) -> float:
    """E[|T|] for independent installation at rate q followed by one fix per failing offset"""
    return q * instance.track_length + instance.offset_count * (1.0 - q) ** instance.n


def offsets_under(position: int, wheels: np.ndarray, max_offset: int) -> np.ndarray:
    """Offsets k in 0..max_offset with position in C + k"""
    offsets = position - wheels
    return offsets[(offsets >= 0) & (offsets <= max_offset)]


def apply_alterations(mask: np.ndarray, covered: np.ndarray, instance: Instance) -> int:
    """
    Fix every failing offset, scanning offsets in increasing order.

    Each still-failing offset k gets a pillar under its frontmost wheel,
    k + max(C). `mask` and `covered` are updated in place; returns the
    number of pillars added.
    """
    wheels = instance.car.wheel_array()
    front = instance.wheels[-1]
    added = 0
    for k in np.flatnonzero(~covered):
        if covered[k]:
            continue
        position = int(k) + front
        mask[position] = True
        covered[offsets_under(position, wheels, instance.max_offset)] = True
        added += 1
    return added


class BaseTrackBuilder(ABC):
    """Abstract base class for track builders"""

    algorithm: BuildAlgorithm
    randomized: bool = True

    def build(self, instance: Instance, seed: Optional[int] = None) -> BuildOutcome:
        """Build a supporting track and verify it before handing it back"""
        if self.randomized:
            if seed is None:
                raise ValueError(f"{self.algorithm.value} builder needs a seed")
            if not 0 <= seed <= SEED_MAX:
                raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
        else:
            seed = None

        outcome = self._construct(instance, seed)

        report = coverage(instance, outcome.track)
        if not report.supported:
            raise GapTrackError(
                f"{self.algorithm.value} builder produced a track that fails at "
                f"{report.failure_count} offsets"
            )

        logger.debug(
            f"{self.algorithm.value}: n={instance.n} f={instance.quarter_length} "
            f"l={instance.track_length} pillars={outcome.pillar_count} "
            f"alterations={outcome.alteration_count} phases={outcome.phase_count}"
        )
        return outcome

    @abstractmethod
    def _construct(self, instance: Instance, seed: Optional[int]) -> BuildOutcome:
        """Produce the track; `build` verifies it"""
        pass
