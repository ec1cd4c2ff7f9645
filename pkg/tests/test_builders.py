"""
Tests for the track builders
"""

import math

import numpy as np
import pytest

from gaptrack.core.builders import (
    BuilderFactory, DerandState, MinHashState, alteration_probability, build, build_conditional,
    build_even, build_full_car, build_lll_fixit, build_minhash, build_random_alterations,
    conditional_bound, lll_precondition,
)
from gaptrack.core.builders.lll import LLLFixitBuilder
from gaptrack.core.verifier import coverage, validate_instance
from gaptrack.errors import InstanceValidationError, PhaseCapExceeded
from gaptrack.models import BuildAlgorithm, FullCar, WheelConfig

from .conftest import random_car

RANDOMIZED = [build_random_alterations, build_lll_fixit, build_minhash]


def small_instances():
    for seed in range(12):
        n = 1 + seed % 5
        f = n + seed % 4
        yield validate_instance(random_car(n, f, seed), f + 3 * seed + 1)


# Even spacing

def test_even_blocks():
    car, outcome = build_even(3, 2, 16)
    assert car.wheels == (2, 4, 6)
    assert car.quarter_length == 6
    assert outcome.track.pillars == (1, 2, 5, 6, 9, 10, 13, 14)
    assert coverage(validate_instance(car, 16), outcome.track).supported
    assert outcome.seed is None


def test_even_single_wheel_fills_track():
    _, outcome = build_even(1, 1, 5)
    assert outcome.track.pillars == (1, 2, 3, 4, 5)


def test_even_fraction_is_order_one_over_n():
    _, outcome = build_even(32, 1, 4096)
    assert outcome.pillar_count / 4096 <= 1 / 30 + 1 / 4096


@pytest.mark.parametrize("n, spacing", [(2, 1), (2, 3), (4, 2), (5, 3), (7, 1)])
def test_even_supported(n, spacing):
    car, outcome = build_even(n, spacing, n * spacing + 37)
    assert coverage(validate_instance(car, n * spacing + 37), outcome.track).supported


def test_even_rejects_short_track():
    with pytest.raises(InstanceValidationError):
        build_even(4, 2, 7)


def test_even_rejects_uneven_car():
    instance = validate_instance(WheelConfig(quarter_length=4, wheels=(1, 3, 4)), 10)
    with pytest.raises(InstanceValidationError) as exc_info:
        build(BuildAlgorithm.EVEN, instance)
    assert exc_info.value.reason == "not_evenly_spaced"


# Random alterations

def test_alteration_probability():
    assert alteration_probability(1) == 0.0
    assert alteration_probability(64) == pytest.approx(math.log(64) / 64)


def test_random_single_wheel_uses_alterations_only():
    instance = validate_instance(WheelConfig(quarter_length=1, wheels=(1,)), 8)
    outcome = build_random_alterations(instance, 7)
    assert outcome.pillar_count == 8
    assert outcome.alteration_count == 8
    assert outcome.install_probability == 0.0


# Every builder

@pytest.mark.parametrize("builder", RANDOMIZED)
def test_randomized_builders_support(builder):
    for instance in small_instances():
        for seed in (0, 1, 2**64 - 1):
            outcome = builder(instance, seed)
            assert coverage(instance, outcome.track).supported
            assert outcome.pillar_count == outcome.track.size
            assert outcome.seed == seed


def test_conditional_supports_small_instances():
    for instance in small_instances():
        outcome = build_conditional(instance)
        assert coverage(instance, outcome.track).supported
        assert outcome.seed is None


@pytest.mark.parametrize("builder", RANDOMIZED)
def test_randomized_builders_deterministic(builder):
    instance = validate_instance(random_car(6, 12, 5), 300)
    assert builder(instance, 99).track == builder(instance, 99).track


def test_randomized_builders_need_seed():
    instance = validate_instance(random_car(3, 6, 1), 30)
    with pytest.raises(ValueError):
        BuilderFactory().get_builder(BuildAlgorithm.MINHASH).build(instance)


# Conditional probabilities

def test_conditional_pair():
    instance = validate_instance(WheelConfig(quarter_length=2, wheels=(1, 2)), 4)
    outcome = build_conditional(instance)
    assert coverage(instance, outcome.track).supported
    assert outcome.pillar_count <= 4


def test_conditional_single_wheel():
    instance = validate_instance(WheelConfig(quarter_length=2, wheels=(2,)), 6)
    outcome = build_conditional(instance)
    assert outcome.pillar_count == 6 - 2 + 1
    assert outcome.alteration_count == outcome.pillar_count


def test_conditional_stays_under_objective():
    for seed in range(5):
        instance = validate_instance(random_car(8, 16, seed), 512)
        outcome = build_conditional(instance)
        assert outcome.pillar_count <= outcome.objective_value + 1e-6
        assert outcome.pillar_count <= conditional_bound(instance)


def test_derand_state_expectation_never_grows():
    instance = validate_instance(random_car(5, 10, 3), 80)
    q = alteration_probability(instance.n)
    state = DerandState.start(instance, q)
    wheels = instance.car.wheel_array()
    previous = state.conditional_expectation()
    assert previous == pytest.approx(q * 80 + instance.offset_count * (1 - q) ** 5)
    for position in range(1, 81):
        offsets = position - wheels
        state.decide(offsets[(offsets >= 0) & (offsets <= instance.max_offset)])
        current = state.conditional_expectation()
        assert current <= previous + 1e-9
        previous = current
    assert int(state.undecided.max()) == 0


@pytest.mark.slow
def test_conditional_acceptance(large_instance):
    first = build_conditional(large_instance)
    assert first.pillar_count <= 1321
    for _ in range(4):
        assert build_conditional(large_instance).track == first.track


@pytest.mark.slow
@pytest.mark.parametrize("n", [8, 32])
def test_conditional_beats_random_mean(n):
    instance = validate_instance(random_car(n, 2 * n, n), 64 * n)
    random_mean = np.mean([build_random_alterations(instance, seed).pillar_count for seed in range(100)])
    assert build_conditional(instance).pillar_count <= random_mean + 1


# Fix-it resampling

def test_lll_clamped_probability_gives_full_track():
    instance = validate_instance(WheelConfig(quarter_length=2, wheels=(1, 2)), 10)
    outcome = build_lll_fixit(instance, 3)
    assert outcome.install_probability == 1.0
    assert outcome.phase_count == 0
    assert outcome.pillar_count == 10


@pytest.mark.parametrize("n", [1, 2, 5, 16, 64, 1000])
def test_lll_precondition(n):
    check = lll_precondition(n)
    assert check.dependency_degree == n * n
    assert check.lll_bound == pytest.approx(1 / (math.e * n * n))
    if check.p < 1:
        assert check.satisfied
        assert check.event_probability <= check.lll_bound


def test_lll_phase_cap():
    instance = validate_instance(random_car(16, 32, 4), 4096)
    with pytest.raises(PhaseCapExceeded):
        for seed in range(50):
            LLLFixitBuilder(phase_cap=1).build(instance, seed)


@pytest.mark.slow
def test_lll_phase_count():
    instance = validate_instance(random_car(32, 64, 11), 65536)
    phases = [build_lll_fixit(instance, seed).phase_count for seed in range(100)]
    assert np.mean(phases) <= 4 * 65536 / 32**2


@pytest.mark.slow
def test_lll_pillar_count(large_instance):
    counts = [build_lll_fixit(large_instance, seed).pillar_count for seed in range(100)]
    assert np.mean(counts) <= (2 + 2 * math.log(64)) / 64 * 16384


# Min-hash

def test_minhash_single_wheel():
    instance = validate_instance(WheelConfig(quarter_length=3, wheels=(3,)), 20)
    outcome = build_minhash(instance, 5)
    assert outcome.track.pillars == tuple(range(3, 21))


def test_minhash_picks_lowest_rank():
    instance = validate_instance(random_car(4, 9, 2), 60)
    state = MinHashState.draw(60, 17)
    chosen = set(build_minhash(instance, 17).track.pillars)
    expected = {
        min((k + w for w in instance.wheels), key=lambda p: (state.rank_of(p), p))
        for k in range(instance.offset_count)
    }
    assert chosen == expected


def test_rank_quantile_threshold():
    assert MinHashState.rank_quantile_threshold(0.0) == 0
    assert MinHashState.rank_quantile_threshold(0.5) == 2**63
    assert MinHashState.rank_quantile_threshold(1.0) == 2**64 - 1
    with pytest.raises(ValueError):
        MinHashState.rank_quantile_threshold(1.5)


def test_minhash_high_rank_pillars_are_rare():
    n, f, length = 16, 32, 2048
    instance = validate_instance(random_car(n, f, 8), length)
    threshold = MinHashState.rank_quantile_threshold(math.log(n) / n)
    seeds = range(20)
    high = 0
    for seed in seeds:
        state = MinHashState.draw(length, seed)
        pillars = np.asarray(build_minhash(instance, seed).track.pillars)
        high += int((state.ranks[pillars - 1] > threshold).sum())
    assert high <= 2 * len(seeds) * instance.offset_count / n


@pytest.mark.slow
def test_minhash_pillar_count(large_instance):
    counts = [build_minhash(large_instance, seed).pillar_count for seed in range(200)]
    assert np.mean(counts) <= 16384 * (1 + math.log(64)) / 64


@pytest.mark.slow
def test_random_alterations_acceptance(large_instance):
    counts = [build_random_alterations(large_instance, seed).pillar_count for seed in range(200)]
    assert np.mean(counts) <= 1.02 * 16384 * (1 + math.log(64)) / 64


# Factory and full car

def test_factory_covers_every_algorithm():
    factory = BuilderFactory()
    assert set(factory.get_supported_algorithms()) == set(BuildAlgorithm)
    assert not factory.is_randomized(BuildAlgorithm.CONDITIONAL)
    assert factory.is_randomized(BuildAlgorithm.LLL_FIXIT)


def test_build_ignores_seed_for_deterministic_builders():
    instance = validate_instance(random_car(3, 6, 0), 40)
    assert build(BuildAlgorithm.CONDITIONAL, instance, 5).seed is None


@pytest.mark.parametrize("algorithm", [BuildAlgorithm.RANDOM_ALTERATIONS, BuildAlgorithm.CONDITIONAL,
                                       BuildAlgorithm.MINHASH])
def test_full_car(algorithm):
    car = FullCar(rear=WheelConfig(quarter_length=5, wheels=(1, 4)),
                  front=WheelConfig(quarter_length=5, wheels=(2, 3, 5)))
    outcome = build_full_car(car, 60, algorithm, seed=9)
    assert outcome.track.track_length == 60
    assert outcome.algorithm == algorithm


def test_full_car_rejects_short_track():
    quarter = WheelConfig(quarter_length=5, wheels=(1, 4))
    with pytest.raises(InstanceValidationError):
        build_full_car(FullCar(rear=quarter, front=quarter), 19, BuildAlgorithm.CONDITIONAL)


@pytest.mark.slow
@pytest.mark.parametrize("algorithm", [BuildAlgorithm.RANDOM_ALTERATIONS, BuildAlgorithm.CONDITIONAL,
                                       BuildAlgorithm.LLL_FIXIT, BuildAlgorithm.MINHASH])
def test_universal_support(algorithm):
    for seed in range(100):
        instance = validate_instance(random_car(32, 64, seed), 4096)
        outcome = build(algorithm, instance, seed)
        assert coverage(instance, outcome.track).supported
