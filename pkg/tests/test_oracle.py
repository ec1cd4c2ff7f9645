"""
Tests for the minimum track oracle
"""

import math

import numpy as np
import pytest

from gaptrack.core.oracle import min_track_exact, min_track_greedy
from gaptrack.core.verifier import counting_lower_bound, coverage, validate_instance
from gaptrack.errors import OracleNodeLimitExceeded
from gaptrack.models import WheelConfig

from .conftest import random_car


def exhaustive_minimum(instance):
    """Smallest supporting track size over all 2^l pillar subsets"""
    length = instance.track_length
    subsets = np.arange(1 << length, dtype=np.int64)
    supported = np.ones(len(subsets), dtype=bool)
    for k in range(instance.offset_count):
        under_wheels = sum(1 << (k + wheel - 1) for wheel in instance.wheels)
        supported &= (subsets & under_wheels) != 0
    sizes = sum((subsets >> bit) & 1 for bit in range(length))
    return int(sizes[supported].min())


def random_instances(count, max_length, seed):
    rng = np.random.default_rng(seed)
    for index in range(count):
        f = int(rng.integers(1, 9))
        n = int(rng.integers(1, f + 1))
        length = int(rng.integers(f, max_length + 1))
        yield validate_instance(random_car(n, f, seed * 1000 + index), length)


@pytest.mark.parametrize("wheels, f, length, expected", [
    ((1, 2), 2, 4, 2),
    ((1, 3), 4, 8, 3),
    ((1, 2, 3, 4), 4, 8, 2),
])
def test_exact_examples(wheels, f, length, expected):
    instance = validate_instance(WheelConfig(quarter_length=f, wheels=wheels), length)
    result = min_track_exact(instance)
    assert result.size == expected
    assert result.optimal
    assert not result.node_limit_hit
    assert coverage(instance, result.track).supported


def test_exact_matches_exhaustive_search():
    for instance in random_instances(200, 16, seed=31):
        result = min_track_exact(instance)
        assert result.optimal
        assert result.size == exhaustive_minimum(instance)
        assert result.size >= counting_lower_bound(instance)
        assert result.lower_bound == counting_lower_bound(instance)
        assert min_track_greedy(instance).size >= result.size


def test_greedy_pair():
    instance = validate_instance(WheelConfig(quarter_length=2, wheels=(1, 2)), 4)
    result = min_track_greedy(instance)
    # pillar 2 covers offsets 0 and 1; 3 and 4 tie for offset 2, smaller wins
    assert result.track.pillars == (2, 3)
    assert not result.optimal


def test_greedy_single_wheel():
    instance = validate_instance(WheelConfig(quarter_length=3, wheels=(2,)), 11)
    result = min_track_greedy(instance)
    assert result.size == 11 - 3 + 1


def test_greedy_against_exact():
    for seed in range(20):
        n = 2 + seed % 4
        f = n + 1 + seed % 4
        instance = validate_instance(random_car(n, f, seed + 100), 3 * f + seed % 5)
        greedy = min_track_greedy(instance)
        exact = min_track_exact(instance)
        assert coverage(instance, greedy.track).supported
        assert greedy.size >= exact.size
        assert greedy.size <= (1 + math.log(instance.offset_count)) * exact.size


def test_size_cap_without_solution():
    instance = validate_instance(WheelConfig(quarter_length=4, wheels=(1, 3)), 8)
    result = min_track_exact(instance, size_cap=2)
    assert result.track is None
    assert result.size_cap == 2


def test_size_cap_with_solution():
    instance = validate_instance(WheelConfig(quarter_length=4, wheels=(1, 3)), 8)
    result = min_track_exact(instance, size_cap=3)
    assert result.size == 3
    assert result.optimal


def test_node_limit_keeps_greedy_track():
    instance = validate_instance(random_car(6, 12, 3), 48)
    result = min_track_exact(instance, node_limit=0)
    assert result.track is not None
    assert not result.optimal
    assert result.node_limit_hit
    assert coverage(instance, result.track).supported


def test_node_limit_without_track_raises():
    instance = validate_instance(random_car(6, 12, 3), 48)
    with pytest.raises(OracleNodeLimitExceeded):
        min_track_exact(instance, size_cap=1, node_limit=0)


def test_invalid_size_cap():
    instance = validate_instance(WheelConfig(quarter_length=2, wheels=(1, 2)), 4)
    with pytest.raises(ValueError):
        min_track_exact(instance, size_cap=0)
