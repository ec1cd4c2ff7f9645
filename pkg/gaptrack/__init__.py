"""
gaptrack - Supporting tracks for train cars with gaps

Builds, verifies and benchmarks pillar layouts that keep a car with a fixed
set of wheels on the track at every position, plus exact minimum-track
search and random-car lower-bound experiments.
"""

__version__ = "1.0.0"

# Core components
from .models import (
    BuildAlgorithm, BuildOutcome, CoverageReport, FullCar, Instance,
    OracleResult, TrackLayout, WheelConfig,
)
from .errors import GapTrackError, InstanceValidationError
from .core.verifier import coverage, validate_instance

# CLI is imported separately to avoid circular dependencies

__all__ = [
    "WheelConfig",
    "Instance",
    "TrackLayout",
    "FullCar",
    "CoverageReport",
    "BuildAlgorithm",
    "BuildOutcome",
    "OracleResult",
    "GapTrackError",
    "InstanceValidationError",
    "validate_instance",
    "coverage",
    "__version__",
]
