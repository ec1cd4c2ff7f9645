"""
Serialization - CarFile/TrackFile codec, ASCII rendering and CSV reports

CarFile and TrackFile are JSON objects with a fixed key set. The canonical
encoding has no whitespace and keys in schema order, so encode(decode(text))
reproduces any canonical text byte for byte.
"""

import csv
import io
import json
from typing import Any, Dict, Iterable, List, Optional, Tuple, Type, TypeVar

from pydantic import BaseModel, ConfigDict, StrictInt, ValidationError

from .errors import InstanceValidationError, InvariantError, MalformedTextError, SchemaError, first_error
from .models import BenchRow, Instance, LowerBoundReport, TrackLayout, WheelConfig

FileModel = TypeVar('FileModel', bound=BaseModel)

BENCH_CSV_HEADER = [
    "algorithm", "family", "n", "f", "l", "trials", "mean_pillars", "stddev_pillars",
    "mean_phases", "mean_alterations", "mean_runtime_ms", "bound_ratio",
]

LOWERBOUND_CSV_HEADER = [
    "n", "trials", "median_min_track", "mean_min_track", "max_min_track",
    "min_min_track", "discarded_small_cars", "oracle_failures",
]


class CarFile(BaseModel):
    """Serialized form of a WheelConfig"""
    model_config = ConfigDict(extra='forbid', strict=True)

    quarter_length: StrictInt
    wheels: List[StrictInt]


class TrackFile(BaseModel):
    """Serialized form of a TrackLayout"""
    model_config = ConfigDict(extra='forbid', strict=True)

    track_length: StrictInt
    pillars: List[StrictInt]


def _reject_duplicate_keys(pairs: List[Tuple[str, Any]]) -> Dict[str, Any]:
    data: Dict[str, Any] = {}
    for key, value in pairs:
        if key in data:
            raise SchemaError(f"duplicate key '{key}'")
        data[key] = value
    return data


def _parse(text: str, schema: Type[FileModel]) -> FileModel:
    try:
        data = json.loads(text, object_pairs_hook=_reject_duplicate_keys)
    except (json.JSONDecodeError, TypeError) as e:
        raise MalformedTextError(f"malformed {schema.__name__}: {e}") from e
    if not isinstance(data, dict):
        raise SchemaError(f"{schema.__name__} must be a JSON object")
    try:
        return schema.model_validate(data)
    except ValidationError as e:
        kind, message = first_error(e)
        location = ".".join(str(part) for part in e.errors()[0].get("loc", ())) if e.errors() else ""
        raise SchemaError(f"{schema.__name__} schema violation at '{location}': {message} ({kind})") from e


def _invariant_error(exc: ValidationError) -> InvariantError:
    reason, message = first_error(exc)
    return InvariantError(message, reason)


def encode_car(car: WheelConfig) -> str:
    return json.dumps({"quarter_length": car.quarter_length, "wheels": list(car.wheels)},
                      separators=(",", ":"))


def decode_car(text: str) -> WheelConfig:
    data = _parse(text, CarFile)
    try:
        return WheelConfig(quarter_length=data.quarter_length, wheels=tuple(data.wheels))
    except ValidationError as e:
        raise _invariant_error(e) from e


def encode_track(track: TrackLayout) -> str:
    return json.dumps({"track_length": track.track_length, "pillars": list(track.pillars)},
                      separators=(",", ":"))


def decode_track(text: str) -> TrackLayout:
    data = _parse(text, TrackFile)
    try:
        return TrackLayout(track_length=data.track_length, pillars=tuple(data.pillars))
    except ValidationError as e:
        raise _invariant_error(e) from e


def render_ascii(track: TrackLayout, instance: Optional[Instance] = None,
                 offset: Optional[int] = None) -> str:
    """
    One character per foot, '#' for a pillar and '.' for a gap.

    With an instance and an offset, a second line marks each wheel of
    C + offset, 'W' on a pillar and 'w' over a gap, and a third line says how
    many of them rest on pillars.
    """
    mask = track.to_mask()
    lines = ["".join("#" if present else "." for present in mask[1:])]
    if (instance is None) != (offset is None):
        raise InstanceValidationError("an overlay needs both an instance and an offset", "incomplete_overlay")
    if instance is None:
        return "\n".join(lines)

    if instance.track_length != track.track_length:
        raise InstanceValidationError(
            f"length mismatch: track has l={track.track_length}, instance has l={instance.track_length}",
            "length_mismatch",
        )
    if not 0 <= offset <= instance.max_offset:
        raise InstanceValidationError(
            f"offset out of range: {offset} not in 0..{instance.max_offset}",
            "offset_out_of_range",
        )

    row = [" "] * track.track_length
    touching = 0
    for wheel in instance.wheels:
        position = offset + wheel
        on_pillar = bool(mask[position])
        row[position - 1] = "W" if on_pillar else "w"
        touching += int(on_pillar)
    lines.append("".join(row).rstrip())
    lines.append(f"offset {offset}: touching {touching} of {instance.n} wheels")
    return "\n".join(lines)


def _write_csv(header: List[str], records: Iterable[List[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(records)
    return buffer.getvalue()


def _fixed(value: float) -> str:
    return "%.6f" % value


def bench_csv(rows: Iterable[BenchRow]) -> str:
    """Benchmark rows as CSV text, floats with six decimals"""
    return _write_csv(BENCH_CSV_HEADER, (
        [
            row.algorithm.value, row.family.value, str(row.n), str(row.quarter_length),
            str(row.track_length), str(row.trials), _fixed(row.mean_pillars),
            _fixed(row.stddev_pillars), _fixed(row.mean_phases), _fixed(row.mean_alterations),
            _fixed(row.mean_runtime_ms), _fixed(row.bound_ratio),
        ]
        for row in rows
    ))


def lowerbound_csv(report: LowerBoundReport) -> str:
    """Sweep rows as CSV text; statistics of an n with no solved car are left empty"""
    def optional(value, fmt=str) -> str:
        return "" if value is None else fmt(value)

    return _write_csv(LOWERBOUND_CSV_HEADER, (
        [
            str(row.n), str(row.trials), optional(row.median_min_track, _fixed),
            optional(row.mean_min_track, _fixed), optional(row.max_min_track),
            optional(row.min_min_track), str(row.discarded_small_cars), str(row.oracle_failures),
        ]
        for row in report.rows
    ))
