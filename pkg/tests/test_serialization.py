"""
Tests for the CarFile/TrackFile codec, ASCII rendering and CSV output
"""

import pytest

from gaptrack.core.verifier import validate_instance
from gaptrack.errors import DecodeError, InstanceValidationError, InvariantError, MalformedTextError, SchemaError
from gaptrack.models import (
    BenchAlgorithm, BenchRow, InstanceFamily, LowerBoundReport, LowerBoundRow, TrackLayout, WheelConfig,
)
from gaptrack.serialization import (
    BENCH_CSV_HEADER, LOWERBOUND_CSV_HEADER, bench_csv, decode_car, decode_track, encode_car,
    encode_track, lowerbound_csv, render_ascii,
)


def test_canonical_encoding():
    assert encode_car(WheelConfig(quarter_length=4, wheels=(1, 3))) == '{"quarter_length":4,"wheels":[1,3]}'
    assert encode_track(TrackLayout(track_length=4, pillars=(2, 4))) == '{"track_length":4,"pillars":[2,4]}'


def test_canonical_text_survives_decoding():
    text = '{"quarter_length":6,"wheels":[1,4,6]}'
    assert encode_car(decode_car(text)) == text
    text = '{"track_length":9,"pillars":[]}'
    assert encode_track(decode_track(text)) == text


def test_decode_accepts_whitespace():
    car = decode_car(' { "wheels": [2, 5], "quarter_length": 5 }\n')
    assert car == WheelConfig(quarter_length=5, wheels=(2, 5))


def test_malformed_text():
    with pytest.raises(MalformedTextError):
        decode_car('{"quarter_length": 4, "wheels": [1,')
    with pytest.raises(MalformedTextError):
        decode_track("pillars")


@pytest.mark.parametrize("text", [
    '[1, 2, 3]',
    '{"quarter_length": 4}',
    '{"quarter_length": 4, "wheels": [1], "extra": true}',
    '{"quarter_length": "4", "wheels": [1]}',
    '{"quarter_length": 4, "wheels": [true]}',
    '{"quarter_length": 4.0, "wheels": [1]}',
])
def test_schema_errors(text):
    with pytest.raises(SchemaError):
        decode_car(text)


@pytest.mark.parametrize("text, reason, message", [
    ('{"quarter_length":4,"wheels":[3,1]}', "wheels_not_sorted", "wheels not sorted"),
    ('{"quarter_length":4,"wheels":[1,5]}', "wheel_out_of_range", "wheel out of range"),
    ('{"quarter_length":4,"wheels":[]}', "empty_wheels", "empty wheel set"),
])
def test_car_invariant_errors(text, reason, message):
    with pytest.raises(InvariantError) as exc_info:
        decode_car(text)
    assert exc_info.value.reason == reason
    assert message in str(exc_info.value)


def test_track_invariant_errors():
    with pytest.raises(InvariantError) as exc_info:
        decode_track('{"track_length":4,"pillars":[2,5]}')
    assert "pillar out of range" in str(exc_info.value)
    with pytest.raises(DecodeError):
        decode_track('{"track_length":4,"pillars":[2,2]}')


@pytest.mark.parametrize("track, expected", [
    (TrackLayout(track_length=4, pillars=(2, 4)), ".#.#"),
    (TrackLayout(track_length=3), "..."),
    (TrackLayout(track_length=5, pillars=(1, 2, 3, 4, 5)), "#####"),
])
def test_render_track(track, expected):
    assert render_ascii(track) == expected


def test_render_overlay():
    instance = validate_instance(WheelConfig(quarter_length=2, wheels=(1, 2)), 4)
    track = TrackLayout(track_length=4, pillars=(2, 4))
    assert render_ascii(track, instance, 1).splitlines() == [
        ".#.#",
        " Ww",
        "offset 1: touching 1 of 2 wheels",
    ]


def test_render_overlay_errors():
    instance = validate_instance(WheelConfig(quarter_length=2, wheels=(1, 2)), 4)
    with pytest.raises(InstanceValidationError) as exc_info:
        render_ascii(TrackLayout(track_length=4), None, 1)
    assert exc_info.value.reason == "incomplete_overlay"
    with pytest.raises(InstanceValidationError):
        render_ascii(TrackLayout(track_length=4), instance)
    with pytest.raises(InstanceValidationError) as exc_info:
        render_ascii(TrackLayout(track_length=4), instance, 3)
    assert exc_info.value.reason == "offset_out_of_range"
    with pytest.raises(InstanceValidationError) as exc_info:
        render_ascii(TrackLayout(track_length=5), instance, 0)
    assert exc_info.value.reason == "length_mismatch"


def test_bench_csv_format():
    row = BenchRow(
        algorithm=BenchAlgorithm.CONDITIONAL, family=InstanceFamily.UNIFORM_RANDOM, n=8,
        quarter_length=16, track_length=1024, trials=20, mean_pillars=300.0, stddev_pillars=0.0,
        mean_phases=0.0, mean_alterations=12.5, mean_runtime_ms=0.0, bound_ratio=0.7782,
    )
    lines = bench_csv([row]).splitlines()
    assert lines[0] == ",".join(BENCH_CSV_HEADER)
    assert lines[1] == ("conditional,uniform_random,8,16,1024,20,300.000000,0.000000,"
                        "0.000000,12.500000,0.000000,0.778200")


def test_lowerbound_csv_format():
    report = LowerBoundReport(rows=(
        LowerBoundRow(n=2, trials=3, median_min_track=3.0, mean_min_track=3.0 + 1 / 3,
                      max_min_track=4, min_min_track=3, discarded_small_cars=1, oracle_failures=0,
                      counting_bound=3, min_track_sizes=(3, 3, 4), wheel_counts=(2, 3, 2)),
        LowerBoundRow(n=4, trials=0, oracle_failures=2, counting_bound=3),
    ))
    lines = lowerbound_csv(report).splitlines()
    assert lines[0] == ",".join(LOWERBOUND_CSV_HEADER)
    assert lines[1] == "2,3,3.000000,3.333333,4,3,1,0"
    assert lines[2] == "4,0,,,,,0,2"


def test_render_marks_each_wheel():
    instance = validate_instance(WheelConfig(quarter_length=2, wheels=(1, 2)), 4)
    track = TrackLayout(track_length=4, pillars=(2, 4))
    # wheel over position 3 hangs over a gap, wheel over position 4 rests on a pillar
    assert render_ascii(track, instance, 2).splitlines()[1] == "  wW"
    full = TrackLayout(track_length=4, pillars=(1, 2, 3, 4))
    assert render_ascii(full, instance, 0).splitlines()[1:] == ["WW", "offset 0: touching 2 of 2 wheels"]
    empty = TrackLayout(track_length=4)
    assert render_ascii(empty, instance, 2).splitlines()[1:] == ["  ww", "offset 2: touching 0 of 2 wheels"]


@pytest.mark.parametrize("decode, text", [
    (decode_car, '{"quarter_length":9,"quarter_length":2,"wheels":[1,2]}'),
    (decode_track, '{"track_length":4,"pillars":[1],"pillars":[2]}'),
])
def test_duplicate_keys_are_schema_errors(decode, text):
    with pytest.raises(SchemaError) as exc_info:
        decode(text)
    assert "duplicate key" in str(exc_info.value)
