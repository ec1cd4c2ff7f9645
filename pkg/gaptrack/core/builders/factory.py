"""
Builder Factory - Creates the builder for each construction algorithm
"""

import logging
from typing import Dict, Optional, Type

import numpy as np

from ...errors import GapTrackError, InstanceValidationError
from ...models import BuildAlgorithm, BuildOutcome, FullCar, Instance, TrackLayout
from ..randomness import derive_seed
from ..verifier import full_car_coverage, validate_instance
from .base import BaseTrackBuilder

logger = logging.getLogger(__name__)


class BuilderFactory:
    """Factory for creating track builders"""

    def __init__(self):
        self._builders = self._initialize_builder_map()

    def _initialize_builder_map(self) -> Dict[BuildAlgorithm, Type[BaseTrackBuilder]]:
        from .alterations import RandomAlterationsBuilder
        from .conditional import ConditionalBuilder
        from .even import EvenSpacingBuilder
        from .lll import LLLFixitBuilder
        from .minhash import MinHashBuilder

        return {
            BuildAlgorithm.EVEN: EvenSpacingBuilder,
            BuildAlgorithm.RANDOM_ALTERATIONS: RandomAlterationsBuilder,
            BuildAlgorithm.CONDITIONAL: ConditionalBuilder,
            BuildAlgorithm.LLL_FIXIT: LLLFixitBuilder,
            BuildAlgorithm.MINHASH: MinHashBuilder,
        }

    def get_builder(self, algorithm: BuildAlgorithm) -> BaseTrackBuilder:
        builder_class = self._builders.get(BuildAlgorithm(algorithm))
        if builder_class is None:
            raise ValueError(f"no builder registered for {algorithm}")
        return builder_class()

    def is_randomized(self, algorithm: BuildAlgorithm) -> bool:
        return self._builders[BuildAlgorithm(algorithm)].randomized

    def get_supported_algorithms(self):
        return list(self._builders)


_factory = BuilderFactory()


def get_builder_factory() -> BuilderFactory:
    return _factory


def build(algorithm: BuildAlgorithm, instance: Instance, seed: Optional[int] = None) -> BuildOutcome:
    """Run one builder; deterministic builders ignore the seed"""
    builder = _factory.get_builder(algorithm)
    return builder.build(instance, seed if builder.randomized else None)


def build_full_car(car: FullCar, track_length: int, algorithm: BuildAlgorithm,
                   seed: Optional[int] = None) -> BuildOutcome:
    """
    Track for a whole car: one track per quarter, merged.

    The rear quarter is solved on its own instance, the front quarter on an
    instance over the same length; their union supports both because adding
    pillars never breaks support. Randomized builders get the seeds
    derive_seed(seed, "rear") and derive_seed(seed, "front").
    """
    builder = _factory.get_builder(algorithm)
    if builder.randomized and seed is None:
        raise ValueError(f"{builder.algorithm.value} builder needs a seed")
    if track_length < car.car_length:
        raise InstanceValidationError(
            f"track shorter than car: l={track_length} < 4f={car.car_length}",
            "track_too_short",
        )

    mask = np.zeros(track_length + 1, dtype=bool)
    alterations = phases = 0
    for label, quarter in (("rear", car.rear), ("front", car.front)):
        instance = validate_instance(quarter, track_length)
        quarter_seed = derive_seed(seed, label) if builder.randomized else None
        outcome = builder.build(instance, quarter_seed)
        mask |= outcome.track.to_mask()
        alterations += outcome.alteration_count
        phases += outcome.phase_count

    track = TrackLayout.from_mask(mask)
    report = full_car_coverage(car, track)
    if not report.supported:
        raise GapTrackError(f"merged track fails the full car at {report.failure_count} offsets")

    logger.debug(f"full car: {track.size} pillars from {builder.algorithm.value}")
    return BuildOutcome(
        track=track,
        algorithm=builder.algorithm,
        pillar_count=track.size,
        alteration_count=alterations,
        phase_count=phases,
        seed=seed if builder.randomized else None,
        install_probability=outcome.install_probability,
    )
