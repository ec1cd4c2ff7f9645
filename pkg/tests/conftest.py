"""
Shared fixtures for the gaptrack test suite
"""

import numpy as np
import pytest

from gaptrack.core.verifier import validate_instance
from gaptrack.models import WheelConfig


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: statistical checks over many seeds (deselect with -m 'not slow')")


def random_car(n: int, quarter_length: int, seed: int) -> WheelConfig:
    """n distinct wheels drawn from 1..quarter_length"""
    rng = np.random.default_rng(seed)
    wheels = np.sort(rng.choice(np.arange(1, quarter_length + 1), size=n, replace=False))
    return WheelConfig(quarter_length=quarter_length, wheels=tuple(int(w) for w in wheels))


@pytest.fixture
def pair_instance():
    """C = {1, 2}, f = 2, l = 4: offsets 0, 1, 2"""
    return validate_instance(WheelConfig(quarter_length=2, wheels=(1, 2)), 4)


@pytest.fixture
def large_instance():
    """n = 64 wheels in a 128-foot quarter on a 16384-foot track"""
    return validate_instance(random_car(64, 128, seed=2024), 16384)
