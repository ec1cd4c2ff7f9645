"""
Derandomized alterations via the method of conditional probabilities
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ...models import BuildAlgorithm, BuildOutcome, Instance, TrackLayout
from .base import BaseTrackBuilder, alteration_probability, apply_alterations, expected_alteration_count

logger = logging.getLogger(__name__)

# Relative tolerance below which the two conditional expectations count as equal
TIE_TOLERANCE = 2.0 ** -40


@dataclass
class DerandState:
    """
    Per-offset bookkeeping for the conditional expectation.

    `undecided[k]` is the number of wheel positions of offset k whose pillar
    has not been decided yet; the conditional probability that k falls
    through is 0 once covered and (1-q)^undecided[k] otherwise.
    """
    undecided: np.ndarray
    covered: np.ndarray
    powers: np.ndarray
    decided: int = 0
    installed: int = 0
    q: float = 0.0
    track_length: int = 0

    @classmethod
    def start(cls, instance: Instance, q: float) -> 'DerandState':
        return cls(
            undecided=np.full(instance.offset_count, instance.n, dtype=np.int64),
            covered=np.zeros(instance.offset_count, dtype=bool),
            powers=(1.0 - q) ** np.arange(instance.n + 1, dtype=np.float64),
            q=q,
            track_length=instance.track_length,
        )

    def fall_probabilities(self) -> np.ndarray:
        probabilities = self.powers[self.undecided]
        probabilities[self.covered] = 0.0
        return probabilities

    def conditional_expectation(self) -> float:
        """|{installed}| + q * (undecided positions) + sum of fall probabilities"""
        remaining = self.track_length - self.decided
        return self.installed + self.q * remaining + float(self.fall_probabilities().sum())

    def decide(self, affected: np.ndarray) -> bool:
        """
        Fix the pillar at the next position, given the offsets it sits under.

        Installing changes the expectation by 1 - sum of (1-q)^(u-1) over the
        uncovered affected offsets; skipping changes nothing else. Ties go
        to skipping.
        """
        open_offsets = affected[~self.covered[affected]]
        gain = float(self.powers[self.undecided[open_offsets] - 1].sum())
        install = gain - 1.0 > TIE_TOLERANCE * max(1.0, gain)

        self.undecided[affected] -= 1
        if install:
            self.covered[affected] = True
            self.installed += 1
        self.decided += 1
        return install


class ConditionalBuilder(BaseTrackBuilder):
    """Walks positions 1..l choosing each pillar so the conditional expectation never grows"""

    algorithm = BuildAlgorithm.CONDITIONAL
    randomized = False

    def _construct(self, instance: Instance, seed: Optional[int]) -> BuildOutcome:
        q = alteration_probability(instance.n)
        state = DerandState.start(instance, q)
        objective = expected_alteration_count(instance, q)

        wheels = instance.car.wheel_array()
        mask = np.zeros(instance.track_length + 1, dtype=bool)
        for position in range(1, instance.track_length + 1):
            offsets = position - wheels
            affected = offsets[(offsets >= 0) & (offsets <= instance.max_offset)]
            mask[position] = state.decide(affected)

        logger.debug(
            f"conditional: installed {state.installed} pillars, "
            f"{int((~state.covered).sum())} offsets left for alterations"
        )
        covered = state.covered.copy()
        added = apply_alterations(mask, covered, instance)

        track = TrackLayout.from_mask(mask)
        return BuildOutcome(
            track=track,
            algorithm=self.algorithm,
            pillar_count=track.size,
            alteration_count=added,
            install_probability=q,
            objective_value=objective,
        )


def build_conditional(instance: Instance) -> BuildOutcome:
    return ConditionalBuilder().build(instance)


def conditional_bound(instance: Instance) -> int:
    """ceil(l (1 + ln n) / n), the count the conditional builder stays under"""
    n = instance.n
    return math.ceil(instance.track_length * (1.0 + math.log(n)) / n)
