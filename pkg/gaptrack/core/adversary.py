"""
Random-car lower-bound machinery

In the adversarial setting the quarter has length f = 2n, the track has
length l = 4n, and each of the 2n wheel positions carries a wheel
independently with probability 1/2. Y counts the offsets 0..2n at which a
fixed track lets the car fall through. This module samples such cars,
computes E[Y] exactly, compares the spread of Y against McDiarmid's bounded
differences inequality, and sweeps the exact minimum track size over n.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..errors import InstanceValidationError, OracleNodeLimitExceeded
from ..models import (
    AdversarySetup, ConcentrationReport, DeviationRow, LowerBoundReport,
    LowerBoundRow, TrackLayout, WheelConfig,
)
from ..utils.config_loader import get_config
from .oracle import min_track_exact
from .randomness import derive_seed, make_rng
from .verifier import coverage, validate_instance

logger = logging.getLogger(__name__)

DEFAULT_S_GRID = (1.0, 2.0, 4.0, 8.0)

# Largest n whose 2^(2n) cars are enumerated exhaustively
BRUTE_FORCE_MAX_N = 10


def sample_car_with_redraws(n: int, seed: int) -> Tuple[WheelConfig, int]:
    """Draw a car for the f = 2n setting, redrawing empty wheel sets; returns the car and the redraw count"""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    quarter = 2 * n
    attempt = 0
    while True:
        bits = make_rng(seed, "adversary_car", attempt).random(quarter) < 0.5
        if bits.any():
            wheels = tuple(int(j) for j in np.flatnonzero(bits) + 1)
            return WheelConfig(quarter_length=quarter, wheels=wheels), attempt
        attempt += 1


def sample_car(n: int, seed: int) -> WheelConfig:
    """Each position 1..2n holds a wheel with probability 1/2; never empty"""
    car, _ = sample_car_with_redraws(n, seed)
    return car


def _check_track(setup: AdversarySetup, track: TrackLayout) -> None:
    if track.track_length != setup.track_length:
        raise InstanceValidationError(
            f"length mismatch: track has l={track.track_length}, setting needs l=4n={setup.track_length}",
            "length_mismatch",
        )


def _incidence(setup: AdversarySetup, track: TrackLayout) -> np.ndarray:
    """A[j - 1, k] = 1 when wheel position j at offset k lands on a pillar"""
    mask = track.to_mask()
    positions = np.arange(1, setup.quarter_length + 1)[:, None] + np.arange(setup.offset_count)[None, :]
    return mask[positions].astype(np.int64)


def expected_y_exact(setup: AdversarySetup, track: TrackLayout) -> float:
    """
    E[Y] = sum over offsets k of 2^-|(T - k) ∩ [1, 2n]|.

    Offset k falls through exactly when every wheel position landing on a
    pillar is empty, and those positions are independent fair coins.
    """
    _check_track(setup, track)
    exposure = _incidence(setup, track).sum(axis=0)
    return math.fsum(math.ldexp(1.0, -int(m)) for m in exposure)


def brute_force_expected_y(n: int, track: TrackLayout) -> float:
    """E[Y] by enumerating all 2^(2n) cars, the empty one included"""
    if n > BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute force enumeration is limited to n <= {BRUTE_FORCE_MAX_N}")
    setup = AdversarySetup(n=n)
    _check_track(setup, track)
    incidence = _incidence(setup, track)
    quarter = setup.quarter_length

    cars = np.arange(1 << quarter, dtype=np.int64)
    bits = ((cars[:, None] >> np.arange(quarter)[None, :]) & 1).astype(np.int64)
    falls = (bits @ incidence) == 0
    total = int(falls.sum())
    return math.ldexp(float(total), -quarter)


def mcdiarmid_tail(s: float, m: int) -> float:
    """McDiarmid's bound min(1, 2 exp(-2 S^2 / m)) on Pr[|Y - E[Y]| >= R S]"""
    if s <= 0:
        raise ValueError(f"S must be positive, got {s}")
    if m < 1:
        raise ValueError(f"m must be a positive integer, got {m}")
    return min(1.0, 2.0 * math.exp(-2.0 * s * s / m))


def _fall_count(setup: AdversarySetup, track: TrackLayout, bits: np.ndarray) -> int:
    if not bits.any():
        return setup.offset_count
    wheels = tuple(int(j) for j in np.flatnonzero(bits) + 1)
    instance = validate_instance(WheelConfig(quarter_length=setup.quarter_length, wheels=wheels),
                                 setup.track_length)
    return coverage(instance, track).failure_count


def concentration_trial(setup: AdversarySetup, track: TrackLayout, trials: int, seed: int,
                        s_grid: Sequence[float] = DEFAULT_S_GRID) -> ConcentrationReport:
    """
    Sample `trials` cars and tabulate how often Y strays from E[Y] by at least R S.

    R = |T| is the Lipschitz constant of Y in each wheel indicator and
    m = 2n the number of indicators. Only strictly positive deviations count.
    """
    if trials < 1:
        raise ValueError(f"trials must be positive, got {trials}")
    _check_track(setup, track)

    exact = expected_y_exact(setup, track)
    rng = make_rng(seed, "concentration")
    draws = rng.random((trials, setup.quarter_length)) < 0.5
    values = np.array([_fall_count(setup, track, row) for row in draws], dtype=np.float64)

    m = setup.quarter_length
    lipschitz = float(track.size)
    deviation = np.abs(values - exact)
    stderr = float(values.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0

    rows = []
    for s in s_grid:
        frequency = float(np.mean((deviation >= lipschitz * s) & (deviation > 1e-12)))
        bound = mcdiarmid_tail(s, m)
        rows.append(DeviationRow(
            s=s,
            empirical_frequency=frequency,
            mcdiarmid_bound=bound,
            binomial_stderr=math.sqrt(bound * (1.0 - bound) / trials),
        ))

    logger.debug(f"concentration: n={setup.n} trials={trials} E[Y]={exact:.6f} mean={values.mean():.6f}")
    return ConcentrationReport(
        trials=trials,
        exact_mean=exact,
        empirical_mean=float(values.mean()),
        empirical_stderr=stderr,
        lipschitz_R=lipschitz,
        m=m,
        deviation_table=tuple(rows),
    )


def _solve(car: WheelConfig, track_length: int, node_limit: Optional[int]) -> Optional[int]:
    instance = validate_instance(car, track_length)
    try:
        result = min_track_exact(instance, node_limit=node_limit)
    except OracleNodeLimitExceeded:
        return None
    return result.size if result.optimal else None


def _sweep_row(n: int, trials: int, seed: int, jobs: int, node_limit: Optional[int]) -> LowerBoundRow:
    cars: List[WheelConfig] = []
    discarded = 0
    attempt = 0
    while len(cars) < trials:
        car = sample_car(n, derive_seed(seed, "lowerbound", n, attempt))
        attempt += 1
        if car.n < n:
            discarded += 1
            continue
        cars.append(car)

    track_length = 4 * n
    with ThreadPoolExecutor(max_workers=jobs) as executor:
        sizes = list(executor.map(lambda car: _solve(car, track_length, node_limit), cars))

    solved = [(size, car.n) for size, car in zip(sizes, cars) if size is not None]
    failures = len(cars) - len(solved)
    if failures:
        logger.warning(f"lowerbound n={n}: {failures} cars could not be solved to optimality")

    values = np.array([size for size, _ in solved], dtype=np.float64)
    return LowerBoundRow(
        n=n,
        trials=len(solved),
        median_min_track=float(np.median(values)) if solved else None,
        mean_min_track=float(values.mean()) if solved else None,
        max_min_track=int(values.max()) if solved else None,
        min_min_track=int(values.min()) if solved else None,
        discarded_small_cars=discarded,
        oracle_failures=failures,
        counting_bound=-(-(2 * n + 1) // n),
        min_track_sizes=tuple(size for size, _ in solved),
        wheel_counts=tuple(count for _, count in solved),
    )


def lowerbound_sweep(n_list: Sequence[int], trials_per_n: int, seed: int, jobs: int = 1,
                     node_limit: Optional[int] = None) -> LowerBoundReport:
    """
    Exact minimum track sizes for random cars with at least n wheels, for each n.

    Cars with fewer than n wheels are discarded and counted. The exact
    searches of one n run on `jobs` worker threads; results do not depend on
    the thread count.
    """
    if trials_per_n < 1:
        raise ValueError(f"trials per n must be positive, got {trials_per_n}")
    if any(n < 1 for n in n_list):
        raise ValueError("every n must be positive")
    if node_limit is None:
        node_limit = get_config().get_int('GAPTRACK_ORACLE_NODE_LIMIT')

    rows = []
    for n in sorted(set(n_list)):
        logger.info(f"lowerbound: solving {trials_per_n} cars for n={n}")
        rows.append(_sweep_row(n, trials_per_n, seed, max(1, jobs), node_limit))
    return LowerBoundReport(rows=tuple(rows))
