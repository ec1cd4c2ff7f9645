"""
Fix-it builder - algorithmic Lovász Local Lemma resampling

Each offset k defines a bad event "no pillar under C + k". Positions are
sampled independently with probability p = min(1, (1 + 2 ln n) / n); while
some event holds, the smallest failing offset has all of its n positions
resampled. Every phase draws from its own seeded stream, so a build is a
pure function of (instance, seed).
"""

import heapq
import logging
import math
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict

from ...errors import PhaseCapExceeded
from ...models import BuildAlgorithm, BuildOutcome, Instance, TrackLayout
from ...utils.config_loader import get_config
from ..randomness import make_rng
from .base import BaseTrackBuilder

logger = logging.getLogger(__name__)


def fixit_probability(n: int) -> float:
    return min(1.0, (1.0 + 2.0 * math.log(n)) / n)


class LLLPrecondition(BaseModel):
    """Numbers behind the symmetric local lemma condition e * Pr[E] * d <= 1"""
    model_config = ConfigDict(frozen=True)

    p: float
    event_probability: float
    dependency_degree: int
    lll_bound: float
    satisfied: bool


def lll_precondition(n: int) -> LLLPrecondition:
    """
    Check (1 - p)^n <= 1 / (e n^2) for the fix-it probability.

    Each event depends on n positions, and each position is shared with at
    most n other events, hence a dependency degree of n^2.
    """
    if n < 1:
        raise ValueError("n must be positive")
    p = fixit_probability(n)
    event_probability = (1.0 - p) ** n
    degree = n * n
    bound = 1.0 / (math.e * degree)
    return LLLPrecondition(
        p=p,
        event_probability=event_probability,
        dependency_degree=degree,
        lll_bound=bound,
        satisfied=event_probability <= bound,
    )


class LLLFixitBuilder(BaseTrackBuilder):
    """Moser-Tardos resampling, smallest failing offset first"""

    algorithm = BuildAlgorithm.LLL_FIXIT

    def __init__(self, phase_cap: Optional[int] = None):
        self.phase_cap = phase_cap

    def _construct(self, instance: Instance, seed: Optional[int]) -> BuildOutcome:
        phase_cap = self.phase_cap or get_config().get_int('GAPTRACK_LLL_PHASE_CAP')
        p = fixit_probability(instance.n)
        wheels = instance.car.wheel_array()
        max_offset = instance.max_offset

        mask = np.zeros(instance.track_length + 1, dtype=bool)
        mask[1:] = make_rng(seed, "lll_fixit", 0).random(instance.track_length) < p

        hits = np.zeros(instance.offset_count, dtype=np.int64)
        for wheel in instance.wheels:
            hits += mask[wheel:wheel + instance.offset_count]

        failing: List[int] = [int(k) for k in np.flatnonzero(hits == 0)]
        heapq.heapify(failing)

        phases = 0
        while failing:
            offset = heapq.heappop(failing)
            if hits[offset] > 0:
                continue
            if phases >= phase_cap:
                raise PhaseCapExceeded(phase_cap)
            phases += 1

            positions = offset + wheels
            fresh = make_rng(seed, "lll_fixit", phases).random(instance.n) < p
            changed = fresh != mask[positions]
            mask[positions] = fresh

            for position, installed in zip(positions[changed], fresh[changed]):
                under = position - wheels
                under = under[(under >= 0) & (under <= max_offset)]
                if installed:
                    hits[under] += 1
                else:
                    hits[under] -= 1
                    for k in under[hits[under] == 0]:
                        heapq.heappush(failing, int(k))

            if hits[offset] == 0:
                heapq.heappush(failing, offset)

        logger.debug(f"lll_fixit: converged after {phases} phases (p={p:.6f})")

        track = TrackLayout.from_mask(mask)
        return BuildOutcome(
            track=track,
            algorithm=self.algorithm,
            pillar_count=track.size,
            phase_count=phases,
            seed=seed,
            install_probability=p,
            objective_value=p * instance.track_length,
        )


def build_lll_fixit(instance: Instance, seed: int) -> BuildOutcome:
    return LLLFixitBuilder().build(instance, seed)
