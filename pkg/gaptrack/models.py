"""
Data models for the gapped train track toolkit
"""

import math
from enum import Enum
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, computed_field, field_validator, model_validator
from pydantic_core import PydanticCustomError


SEED_MAX = 2**64 - 1


class BuildAlgorithm(str, Enum):
    """Track construction algorithms"""
    EVEN = "even"
    RANDOM_ALTERATIONS = "random_alterations"
    CONDITIONAL = "conditional"
    LLL_FIXIT = "lll_fixit"
    MINHASH = "minhash"


class BenchAlgorithm(str, Enum):
    """Algorithms the benchmark harness can run: every builder plus the greedy oracle"""
    EVEN = "even"
    RANDOM_ALTERATIONS = "random_alterations"
    CONDITIONAL = "conditional"
    LLL_FIXIT = "lll_fixit"
    MINHASH = "minhash"
    GREEDY_ORACLE = "greedy_oracle"


class InstanceFamily(str, Enum):
    """Wheel layouts the benchmark harness knows how to generate"""
    EVEN_SPACED = "even_spaced"
    GEOMETRIC = "geometric"
    UNIFORM_RANDOM = "uniform_random"
    ADVERSARIAL_SAMPLED = "adversarial_sampled"


def _check_increasing(values: Tuple[int, ...], label: str) -> None:
    """Reject duplicates and descending pairs in a position list"""
    if len(values) < 2:
        return
    steps = np.diff(np.asarray(values, dtype=np.int64))
    if np.any(steps == 0):
        duplicate = values[int(np.flatnonzero(steps == 0)[0])]
        raise PydanticCustomError(f"duplicate_{label}", f"duplicate {label} {duplicate}")
    if np.any(steps < 0):
        raise PydanticCustomError(f"{label}s_not_sorted", f"{label}s not sorted")


class WheelConfig(BaseModel):
    """Wheel offsets within one quarter of the car"""
    model_config = ConfigDict(frozen=True)

    quarter_length: int = Field(description="Quarter length f in feet")
    wheels: Tuple[int, ...] = Field(description="Strictly increasing wheel offsets from the rear of the quarter")

    @model_validator(mode='after')
    def check_wheels(self) -> 'WheelConfig':
        if self.quarter_length < 1:
            raise PydanticCustomError("bad_quarter_length", "quarter length must be positive")
        if not self.wheels:
            raise PydanticCustomError("empty_wheels", "empty wheel set")
        _check_increasing(self.wheels, "wheel")
        if self.wheels[0] < 1 or self.wheels[-1] > self.quarter_length:
            bad = self.wheels[0] if self.wheels[0] < 1 else self.wheels[-1]
            raise PydanticCustomError(
                "wheel_out_of_range",
                "wheel out of range: {wheel} not in 1..{limit}",
                {"wheel": bad, "limit": self.quarter_length},
            )
        return self

    @property
    def n(self) -> int:
        return len(self.wheels)

    def wheel_array(self) -> np.ndarray:
        return np.asarray(self.wheels, dtype=np.int64)


class Instance(BaseModel):
    """A quarter car paired with a track length; offsets run over 0..l-f"""
    model_config = ConfigDict(frozen=True)

    car: WheelConfig
    track_length: int

    @model_validator(mode='after')
    def check_lengths(self) -> 'Instance':
        if self.track_length < 1:
            raise PydanticCustomError("bad_track_length", "track length must be positive")
        if self.car.quarter_length > self.track_length:
            raise PydanticCustomError(
                "track_too_short",
                "track shorter than quarter: l={length} < f={quarter}",
                {"length": self.track_length, "quarter": self.car.quarter_length},
            )
        return self

    @property
    def n(self) -> int:
        return self.car.n

    @property
    def wheels(self) -> Tuple[int, ...]:
        return self.car.wheels

    @property
    def quarter_length(self) -> int:
        return self.car.quarter_length

    @property
    def max_offset(self) -> int:
        return self.track_length - self.car.quarter_length

    @property
    def offset_count(self) -> int:
        return self.max_offset + 1


class TrackLayout(BaseModel):
    """Pillar positions installed along a track of length l"""
    model_config = ConfigDict(frozen=True)

    track_length: int
    pillars: Tuple[int, ...] = ()

    @model_validator(mode='after')
    def check_pillars(self) -> 'TrackLayout':
        if self.track_length < 1:
            raise PydanticCustomError("bad_track_length", "track length must be positive")
        _check_increasing(self.pillars, "pillar")
        if self.pillars and (self.pillars[0] < 1 or self.pillars[-1] > self.track_length):
            bad = self.pillars[0] if self.pillars[0] < 1 else self.pillars[-1]
            raise PydanticCustomError(
                "pillar_out_of_range",
                "pillar out of range: {pillar} not in 1..{limit}",
                {"pillar": bad, "limit": self.track_length},
            )
        return self

    @classmethod
    def from_mask(cls, mask: np.ndarray) -> 'TrackLayout':
        """Build a layout from a boolean mask indexed by position (index 0 unused)"""
        positions = np.flatnonzero(mask[1:]) + 1
        return cls(track_length=len(mask) - 1, pillars=tuple(int(p) for p in positions))

    def to_mask(self) -> np.ndarray:
        mask = np.zeros(self.track_length + 1, dtype=bool)
        if self.pillars:
            mask[np.asarray(self.pillars, dtype=np.int64)] = True
        return mask

    @property
    def size(self) -> int:
        return len(self.pillars)


class FullCar(BaseModel):
    """Rear and front quarters of a 4f-foot car, verified independently"""
    model_config = ConfigDict(frozen=True)

    rear: WheelConfig
    front: WheelConfig

    @model_validator(mode='after')
    def check_quarters(self) -> 'FullCar':
        if self.rear.quarter_length != self.front.quarter_length:
            raise PydanticCustomError(
                "quarter_mismatch",
                "rear and front quarters differ in length: {rear} != {front}",
                {"rear": self.rear.quarter_length, "front": self.front.quarter_length},
            )
        return self

    @property
    def quarter_length(self) -> int:
        return self.rear.quarter_length

    @property
    def car_length(self) -> int:
        return 4 * self.rear.quarter_length


class CoverageReport(BaseModel):
    """Support verdict and the offsets at which the car falls through"""
    model_config = ConfigDict(frozen=True)

    supported: bool
    failing_offsets: Tuple[int, ...] = ()
    failure_count: int = Field(ge=0)
    offset_count: int = Field(ge=1, description="Size of the offset universe that was checked")

    @model_validator(mode='after')
    def check_consistency(self) -> 'CoverageReport':
        if self.failure_count != len(self.failing_offsets):
            raise ValueError("failure_count must equal the number of failing offsets")
        if self.supported != (self.failure_count == 0):
            raise ValueError("supported must hold exactly when no offset fails")
        if self.failing_offsets and (self.failing_offsets[0] < 0 or self.failing_offsets[-1] >= self.offset_count):
            raise ValueError("failing offset outside the offset universe")
        return self


class BuildOutcome(BaseModel):
    """A supporting track plus the statistics of the builder that produced it"""
    model_config = ConfigDict(frozen=True)

    track: TrackLayout
    algorithm: BuildAlgorithm
    pillar_count: int = Field(ge=0)
    alteration_count: int = Field(default=0, ge=0, description="Pillars added by fix-up passes")
    phase_count: int = Field(default=0, ge=0, description="Resampling phases of the fix-it builder")
    seed: Optional[int] = Field(default=None, ge=0, le=SEED_MAX)
    install_probability: float = Field(default=0.0, ge=0.0, le=1.0)
    objective_value: Optional[float] = Field(default=None, description="Expected or guaranteed pillar count the builder tracks")

    @model_validator(mode='after')
    def check_count(self) -> 'BuildOutcome':
        if self.pillar_count != self.track.size:
            raise ValueError("pillar_count must equal the number of pillars in the track")
        return self


class OracleResult(BaseModel):
    """Result of a minimum-track search"""
    model_config = ConfigDict(frozen=True)

    track: Optional[TrackLayout] = None
    optimal: bool = False
    explored_nodes: int = Field(default=0, ge=0)
    size_cap: Optional[int] = Field(default=None, ge=1)
    node_limit_hit: bool = False
    lower_bound: int = Field(default=0, ge=0)

    @property
    def size(self) -> Optional[int]:
        return None if self.track is None else self.track.size


class AdversarySetup(BaseModel):
    """The f = 2n, l = 4n regime with wheels drawn independently at probability 1/2"""
    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1)

    @computed_field
    @property
    def quarter_length(self) -> int:
        return 2 * self.n

    @computed_field
    @property
    def track_length(self) -> int:
        return 4 * self.n

    @computed_field
    @property
    def wheel_probability(self) -> float:
        return 0.5

    @property
    def offset_count(self) -> int:
        return self.track_length - self.quarter_length + 1


class DeviationRow(BaseModel):
    """Empirical tail frequency at one deviation scale next to its McDiarmid bound"""
    model_config = ConfigDict(frozen=True)

    s: float = Field(gt=0)
    empirical_frequency: float = Field(ge=0.0, le=1.0)
    mcdiarmid_bound: float = Field(ge=0.0, le=1.0)
    binomial_stderr: float = Field(default=0.0, ge=0.0)


class ConcentrationReport(BaseModel):
    """How tightly the fall-through count concentrates around its exact mean"""
    model_config = ConfigDict(frozen=True)

    trials: int = Field(ge=1)
    exact_mean: float
    empirical_mean: float
    empirical_stderr: float = Field(ge=0.0)
    lipschitz_R: float = Field(ge=0.0)
    m: int = Field(ge=1, description="Number of independent wheel indicators")
    deviation_table: Tuple[DeviationRow, ...] = ()

    @model_validator(mode='after')
    def check_bounds(self) -> 'ConcentrationReport':
        for row in self.deviation_table:
            expected = min(1.0, 2.0 * math.exp(-2.0 * row.s * row.s / self.m))
            if not math.isclose(row.mcdiarmid_bound, expected, rel_tol=1e-12, abs_tol=1e-300):
                raise ValueError(f"McDiarmid bound for S={row.s} does not match 2*exp(-2S^2/m)")
        return self


class LowerBoundRow(BaseModel):
    """Minimum track sizes over qualifying sampled cars for one n"""
    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1)
    trials: int = Field(ge=0, description="Qualifying cars solved exactly")
    median_min_track: Optional[float] = None
    mean_min_track: Optional[float] = None
    max_min_track: Optional[int] = None
    min_min_track: Optional[int] = None
    discarded_small_cars: int = Field(default=0, ge=0)
    oracle_failures: int = Field(default=0, ge=0)
    counting_bound: int = Field(ge=1)
    min_track_sizes: Tuple[int, ...] = ()
    wheel_counts: Tuple[int, ...] = ()


class LowerBoundReport(BaseModel):
    """Rows of a lower-bound sweep, sorted by n"""
    model_config = ConfigDict(frozen=True)

    rows: Tuple[LowerBoundRow, ...] = ()

    @field_validator('rows')
    @classmethod
    def check_sorted(cls, rows: Tuple[LowerBoundRow, ...]) -> Tuple[LowerBoundRow, ...]:
        ns = [row.n for row in rows]
        if ns != sorted(ns):
            raise ValueError("rows must be sorted by n")
        return rows


class BenchConfig(BaseModel):
    """Benchmark configuration, usually loaded from a JSON file"""
    model_config = ConfigDict(frozen=True, extra='forbid')

    instance_family: InstanceFamily
    n_list: Tuple[int, ...] = Field(min_length=1)
    length_multiplier: int = Field(ge=1, description="Track length as a multiple of the quarter length")
    seeds: int = Field(ge=1, description="Trials per cell")
    algorithms: Tuple[BenchAlgorithm, ...] = Field(min_length=1)
    base_seed: int = Field(default=0, ge=0, le=SEED_MAX)
    measure_runtime: bool = Field(default=False, description="Record wall-clock runtimes (breaks byte-identical output)")

    @field_validator('n_list')
    @classmethod
    def check_n_list(cls, values: Tuple[int, ...]) -> Tuple[int, ...]:
        if any(n < 1 for n in values):
            raise ValueError("every n must be positive")
        return values


class BenchRow(BaseModel):
    """Aggregate statistics for one (family, n, algorithm) cell"""
    model_config = ConfigDict(frozen=True)

    algorithm: BenchAlgorithm
    family: InstanceFamily
    n: int = Field(ge=1)
    quarter_length: int = Field(ge=1)
    track_length: int = Field(ge=1)
    trials: int = Field(ge=1)
    mean_pillars: float = Field(ge=0.0)
    stddev_pillars: float = Field(ge=0.0)
    mean_phases: float = Field(ge=0.0)
    mean_alterations: float = Field(ge=0.0)
    mean_runtime_ms: float = Field(ge=0.0)
    bound_ratio: float = Field(gt=0.0)
