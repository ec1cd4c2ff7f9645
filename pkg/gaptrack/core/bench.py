"""
Benchmark Harness - runs builders over generated instance families and aggregates statistics
"""

import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Tuple

import numpy as np

from ..errors import InfeasibleCellError
from ..models import (
    BenchAlgorithm, BenchConfig, BenchRow, BuildAlgorithm, Instance,
    InstanceFamily, WheelConfig,
)
from ..utils.config_loader import get_config
from .adversary import sample_car
from .builders.even import even_car
from .builders.factory import get_builder_factory
from .oracle import min_track_greedy
from .randomness import derive_seed, make_rng
from .verifier import coverage, validate_instance

logger = logging.getLogger(__name__)

EVEN_SPACING = 2

# (pillars, phases, alterations, runtime_ms)
TrialStats = Tuple[int, int, int, float]


def generate_car(family: InstanceFamily, n: int, base_seed: int) -> WheelConfig:
    """The single car a benchmark uses for (family, n)"""
    if family == InstanceFamily.EVEN_SPACED:
        return even_car(n, EVEN_SPACING)

    if family == InstanceFamily.GEOMETRIC:
        wheels = tuple(1 << i for i in range(n))
        return WheelConfig(quarter_length=max(2 * n, wheels[-1]), wheels=wheels)

    if family == InstanceFamily.UNIFORM_RANDOM:
        rng = make_rng(base_seed, "instance", family, n)
        chosen = rng.choice(np.arange(1, 2 * n + 1), size=n, replace=False)
        return WheelConfig(quarter_length=2 * n, wheels=tuple(int(w) for w in np.sort(chosen)))

    return sample_car(n, derive_seed(base_seed, "instance", family, n))


class BenchRunner:
    """Runs every (family, n, algorithm) cell of a benchmark configuration"""

    def __init__(self, config: BenchConfig, jobs: Optional[int] = None,
                 max_track_length: Optional[int] = None):
        settings = get_config()
        self.config = config
        self.jobs = max(1, jobs or settings.get_int('GAPTRACK_JOBS'))
        self.max_track_length = max_track_length or settings.get_int('GAPTRACK_MAX_TRACK_LENGTH')
        self.measure_runtime = config.measure_runtime or settings.get_boolean('GAPTRACK_BENCH_TIMING')
        self.factory = get_builder_factory()
        self.skipped_cells: List[Tuple[InstanceFamily, int, BenchAlgorithm, str]] = []

    def run(self) -> List[BenchRow]:
        family = self.config.instance_family
        rows: List[BenchRow] = []
        self.skipped_cells = []

        for n in sorted(set(self.config.n_list)):
            try:
                instance = self._instance(family, n)
            except InfeasibleCellError as e:
                for algorithm in self.config.algorithms:
                    self._skip(family, n, algorithm, str(e))
                continue

            for algorithm in self.config.algorithms:
                if algorithm == BenchAlgorithm.EVEN and family != InstanceFamily.EVEN_SPACED:
                    self._skip(family, n, algorithm, "even spacing needs the even_spaced family")
                    continue
                logger.info(f"bench: {family.value} n={n} {algorithm.value} x{self.config.seeds}")
                rows.append(self._run_cell(instance, family, n, algorithm))

        return sorted(rows, key=lambda row: (row.family.value, row.n, row.algorithm.value))

    def _skip(self, family: InstanceFamily, n: int, algorithm: BenchAlgorithm, reason: str):
        logger.warning(f"bench: skipping {family.value} n={n} {algorithm.value}: {reason}")
        self.skipped_cells.append((family, n, algorithm, reason))

    def _instance(self, family: InstanceFamily, n: int) -> Instance:
        if family == InstanceFamily.GEOMETRIC and n > 62:
            raise InfeasibleCellError(f"geometric wheels 1..2^{n - 1} do not fit a track")
        car = generate_car(family, n, self.config.base_seed)
        track_length = self.config.length_multiplier * car.quarter_length
        if track_length > self.max_track_length:
            raise InfeasibleCellError(
                f"track length {track_length} exceeds the limit of {self.max_track_length}"
            )
        return validate_instance(car, track_length)

    def _trial(self, instance: Instance, algorithm: BenchAlgorithm, seed: int) -> TrialStats:
        start = time.perf_counter()
        if algorithm == BenchAlgorithm.GREEDY_ORACLE:
            track = min_track_greedy(instance).track
            phases = alterations = 0
        else:
            builder = self.factory.get_builder(BuildAlgorithm(algorithm.value))
            outcome = builder.build(instance, seed if builder.randomized else None)
            track, phases, alterations = outcome.track, outcome.phase_count, outcome.alteration_count
        elapsed_ms = (time.perf_counter() - start) * 1000.0

        if not coverage(instance, track).supported:
            raise InfeasibleCellError(f"{algorithm.value} produced an unsupported track")
        return track.size, phases, alterations, elapsed_ms if self.measure_runtime else 0.0

    def _is_deterministic(self, algorithm: BenchAlgorithm) -> bool:
        if algorithm == BenchAlgorithm.GREEDY_ORACLE:
            return True
        return not self.factory.is_randomized(BuildAlgorithm(algorithm.value))

    def _run_cell(self, instance: Instance, family: InstanceFamily, n: int,
                  algorithm: BenchAlgorithm) -> BenchRow:
        trials = self.config.seeds
        base = self.config.base_seed

        if self._is_deterministic(algorithm):
            stats = [self._trial(instance, algorithm, 0)] * trials
        else:
            seeds = [derive_seed(base, family, n, algorithm, trial) for trial in range(trials)]
            with ThreadPoolExecutor(max_workers=self.jobs) as executor:
                stats = list(executor.map(lambda seed: self._trial(instance, algorithm, seed), seeds))

        table = np.array(stats, dtype=np.float64)
        pillars = table[:, 0]
        ell = instance.track_length
        reference = ell * (1.0 + math.log(n)) / n

        return BenchRow(
            algorithm=algorithm,
            family=family,
            n=n,
            quarter_length=instance.quarter_length,
            track_length=ell,
            trials=trials,
            mean_pillars=float(pillars.mean()),
            stddev_pillars=float(pillars.std(ddof=1)) if trials > 1 else 0.0,
            mean_phases=float(table[:, 1].mean()),
            mean_alterations=float(table[:, 2].mean()),
            mean_runtime_ms=float(table[:, 3].mean()),
            bound_ratio=float(pillars.mean()) / reference,
        )


def run_bench(config: BenchConfig, jobs: int = 1) -> List[BenchRow]:
    """Run a benchmark configuration; output depends only on the configuration"""
    return BenchRunner(config, jobs=jobs).run()

