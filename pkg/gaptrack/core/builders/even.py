"""
Even spacing builder - periodic pillar blocks for evenly spaced wheels
"""

from typing import Optional, Tuple

import numpy as np

from ...errors import InstanceValidationError
from ...models import BuildAlgorithm, BuildOutcome, Instance, TrackLayout, WheelConfig
from ..verifier import validate_instance
from .base import BaseTrackBuilder


def block_period(n: int, spacing: int) -> int:
    """Distance between the starts of consecutive pillar blocks"""
    return max(1, (n - 2) * spacing + 2)


def even_car(n: int, spacing: int) -> WheelConfig:
    """The car C = {g, 2g, ..., ng} with f = ng"""
    return WheelConfig(quarter_length=n * spacing, wheels=tuple(spacing * i for i in range(1, n + 1)))


class EvenSpacingBuilder(BaseTrackBuilder):
    """Blocks of g pillars repeating every max(1, (n-2)g + 2) feet"""

    algorithm = BuildAlgorithm.EVEN
    randomized = False

    def _construct(self, instance: Instance, seed: Optional[int]) -> BuildOutcome:
        spacing = self.spacing_of(instance.car)
        period = block_period(instance.n, spacing)

        mask = np.zeros(instance.track_length + 1, dtype=bool)
        positions = np.arange(instance.track_length)
        mask[1:] = (positions % period) < spacing

        track = TrackLayout.from_mask(mask)
        return BuildOutcome(
            track=track,
            algorithm=self.algorithm,
            pillar_count=track.size,
            objective_value=float(track.size),
        )

    @staticmethod
    def spacing_of(car: WheelConfig) -> int:
        """The spacing g of an evenly spaced car; rejects any other layout"""
        spacing = car.wheels[0]
        expected = tuple(spacing * i for i in range(1, car.n + 1))
        if car.wheels != expected or car.quarter_length != car.n * spacing:
            raise InstanceValidationError(
                "car is not evenly spaced: wheels must be g, 2g, ..., ng with f = ng",
                "not_evenly_spaced",
            )
        return spacing


def build_even(n: int, spacing: int, track_length: int) -> Tuple[WheelConfig, BuildOutcome]:
    """Evenly spaced car with n wheels g apart, and its periodic supporting track"""
    if n < 1 or spacing < 1:
        raise InstanceValidationError("n and spacing must be positive", "bad_quarter_length")
    if track_length < n * spacing:
        raise InstanceValidationError(
            f"track shorter than quarter: l={track_length} < n*g={n * spacing}",
            "track_too_short",
        )
    car = even_car(n, spacing)
    instance = validate_instance(car, track_length)
    return car, EvenSpacingBuilder().build(instance)
