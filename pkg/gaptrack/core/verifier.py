"""
Track Verifier - exact support checks every other module treats as ground truth
"""

from typing import Any, FrozenSet, Mapping, Sequence, Union

import numpy as np
from pydantic import ValidationError

from ..errors import InstanceValidationError, as_instance_error
from ..models import CoverageReport, FullCar, Instance, TrackLayout, WheelConfig


def validate_instance(car: Union[WheelConfig, Mapping[str, Any]], track_length: int) -> Instance:
    """
    Build an Instance from a car (or its raw fields) and a track length.

    Raises InstanceValidationError with a distinct `reason` for every broken
    invariant (empty_wheels, wheel_out_of_range, track_too_short, ...).
    """
    try:
        wheel_config = car if isinstance(car, WheelConfig) else WheelConfig.model_validate(car)
        return Instance(car=wheel_config, track_length=track_length)
    except ValidationError as exc:
        raise as_instance_error(exc) from exc


def covered_offsets(mask: np.ndarray, wheels: Sequence[int], offset_count: int) -> np.ndarray:
    """
    Boolean array over offsets 0..offset_count-1: True where some wheel sits on a pillar.

    `mask` is indexed by track position, index 0 unused.
    """
    covered = np.zeros(offset_count, dtype=bool)
    for wheel in wheels:
        covered |= mask[wheel:wheel + offset_count]
    return covered


def _report(covered: np.ndarray) -> CoverageReport:
    failing = tuple(int(k) for k in np.flatnonzero(~covered))
    return CoverageReport(
        supported=not failing,
        failing_offsets=failing,
        failure_count=len(failing),
        offset_count=len(covered),
    )


def coverage(instance: Instance, track: TrackLayout) -> CoverageReport:
    """Offsets k in 0..l-f at which (C + k) misses every pillar"""
    if track.track_length != instance.track_length:
        raise InstanceValidationError(
            f"length mismatch: track has l={track.track_length}, instance has l={instance.track_length}",
            "length_mismatch",
        )
    covered = covered_offsets(track.to_mask(), instance.wheels, instance.offset_count)
    return _report(covered)


def pillar_cover_set(instance: Instance, pillar: int) -> FrozenSet[int]:
    """Offsets k for which the pillar lies under some wheel, i.e. pillar in C + k"""
    if not 1 <= pillar <= instance.track_length:
        raise InstanceValidationError(
            f"pillar out of range: {pillar} not in 1..{instance.track_length}",
            "pillar_out_of_range",
        )
    return frozenset(
        pillar - wheel for wheel in instance.wheels
        if 0 <= pillar - wheel <= instance.max_offset
    )


def counting_lower_bound(instance: Instance) -> int:
    """A pillar covers at most n offsets, so a supporting track needs ceil((l-f+1)/n) of them"""
    return -(-instance.offset_count // instance.n)


def full_car_coverage(car: FullCar, track: TrackLayout) -> CoverageReport:
    """
    Support check for a whole car over offsets 0..l-4f.

    Rear wheels sit at k + C_rear, front wheels at k + 3f + C_front; an offset
    fails when either quarter has no wheel on a pillar.
    """
    if track.track_length < car.car_length:
        raise InstanceValidationError(
            f"track shorter than car: l={track.track_length} < 4f={car.car_length}",
            "track_too_short",
        )
    offset_count = track.track_length - car.car_length + 1
    mask = track.to_mask()
    front_shift = 3 * car.quarter_length
    rear = covered_offsets(mask, car.rear.wheels, offset_count)
    front = covered_offsets(mask, [front_shift + w for w in car.front.wheels], offset_count)
    return _report(rear & front)
