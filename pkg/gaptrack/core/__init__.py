"""
Core engine for gapped train tracks

Verification, the track builders, the minimum-track oracle, the random-car
lower-bound experiments and the benchmark harness.
"""

from .verifier import (
    counting_lower_bound, coverage, full_car_coverage, pillar_cover_set, validate_instance,
)
from .randomness import derive_seed, make_rng
from .builders import (
    BuilderFactory, build, build_conditional, build_even, build_full_car,
    build_lll_fixit, build_minhash, build_random_alterations, lll_precondition,
)
from .oracle import min_track_exact, min_track_greedy
from .adversary import (
    brute_force_expected_y, concentration_trial, expected_y_exact,
    lowerbound_sweep, mcdiarmid_tail, sample_car,
)
from .bench import BenchRunner, run_bench

__all__ = [
    "validate_instance",
    "coverage",
    "pillar_cover_set",
    "counting_lower_bound",
    "full_car_coverage",
    "make_rng",
    "derive_seed",
    "BuilderFactory",
    "build",
    "build_full_car",
    "build_even",
    "build_random_alterations",
    "build_conditional",
    "build_lll_fixit",
    "build_minhash",
    "lll_precondition",
    "min_track_exact",
    "min_track_greedy",
    "sample_car",
    "expected_y_exact",
    "brute_force_expected_y",
    "mcdiarmid_tail",
    "concentration_trial",
    "lowerbound_sweep",
    "BenchRunner",
    "run_bench",
]
