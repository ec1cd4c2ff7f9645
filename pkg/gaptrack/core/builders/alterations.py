"""
Random installation followed by alterations
"""

from typing import Optional

import numpy as np

from ...models import BuildAlgorithm, BuildOutcome, Instance, TrackLayout
from ..randomness import make_rng
from ..verifier import covered_offsets
from .base import BaseTrackBuilder, alteration_probability, apply_alterations, expected_alteration_count


class RandomAlterationsBuilder(BaseTrackBuilder):
    """
    Install each pillar independently with probability q = min(1, ln n / n),
    then put one extra pillar under the frontmost wheel of every offset that
    still falls through.
    """

    algorithm = BuildAlgorithm.RANDOM_ALTERATIONS

    def _construct(self, instance: Instance, seed: Optional[int]) -> BuildOutcome:
        q = alteration_probability(instance.n)
        rng = make_rng(seed, "random_alterations")

        mask = np.zeros(instance.track_length + 1, dtype=bool)
        mask[1:] = rng.random(instance.track_length) < q

        covered = covered_offsets(mask, instance.wheels, instance.offset_count)
        added = apply_alterations(mask, covered, instance)

        track = TrackLayout.from_mask(mask)
        return BuildOutcome(
            track=track,
            algorithm=self.algorithm,
            pillar_count=track.size,
            alteration_count=added,
            seed=seed,
            install_probability=q,
            objective_value=expected_alteration_count(instance, q),
        )


def build_random_alterations(instance: Instance, seed: int) -> BuildOutcome:
    return RandomAlterationsBuilder().build(instance, seed)
