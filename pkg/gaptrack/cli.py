"""
Command Line Interface for gaptrack
"""

import functools
import json
import sys
from pathlib import Path
from typing import List, Optional

import click
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table

from . import __version__
from .core.adversary import lowerbound_sweep
from .core.bench import BenchRunner
from .core.builders.factory import build, build_full_car
from .core.oracle import min_track_exact, min_track_greedy
from .core.verifier import coverage, full_car_coverage, validate_instance
from .errors import DecodeError, GapTrackError, first_error
from .models import SEED_MAX, BenchAlgorithm, BenchConfig, BuildAlgorithm, FullCar, InstanceFamily
from .serialization import (
    bench_csv, decode_car, decode_track, encode_track, lowerbound_csv, render_ascii,
)
from .utils.config_loader import get_config
from .utils.logging_config import setup_logging

console = Console()

ALGORITHM_CHOICES = {
    'even': BuildAlgorithm.EVEN,
    'random': BuildAlgorithm.RANDOM_ALTERATIONS,
    'derand': BuildAlgorithm.CONDITIONAL,
    'lll': BuildAlgorithm.LLL_FIXIT,
    'minhash': BuildAlgorithm.MINHASH,
}

# Failing offsets printed by `verify`
MAX_LISTED_OFFSETS = 10

SEED = click.IntRange(0, SEED_MAX)
# --seed for commands whose output does not depend on one
IGNORED_SEED = click.option('--seed', type=SEED, default=None, help='Accepted and ignored; the result is deterministic')
FILE = click.Path(dir_okay=False, path_type=Path)


def _handle_errors(command):
    """Turn library errors into click errors (exit code 1)"""
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except GapTrackError as e:
            raise click.ClickException(str(e)) from e
    return wrapper


def _read_text(path: Path, label: str) -> str:
    if not path.is_file():
        raise click.ClickException(f"{label} file not found: {path}")
    try:
        return path.read_text(encoding='utf-8')
    except (OSError, UnicodeDecodeError) as e:
        raise click.ClickException(f"Failed to read {label} file {path}: {e}")


def _load_car(path: Path, label: str = "car"):
    try:
        return decode_car(_read_text(path, label))
    except DecodeError as e:
        raise click.ClickException(f"malformed {label} file {path}: {e}")


def _load_track(path: Path):
    try:
        return decode_track(_read_text(path, "track"))
    except DecodeError as e:
        raise click.ClickException(f"malformed track file {path}: {e}")


def _write_text(path: Path, text: str) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding='utf-8', newline='\n')
    except OSError as e:
        raise click.ClickException(f"Failed to write {path}: {e}")


@click.group()
@click.version_option(version=__version__, prog_name="gaptrack")
@click.option('--log-level',
              type=click.Choice(['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'], case_sensitive=False),
              default=None, help='Logging level (defaults to GAPTRACK_LOG_LEVEL, then WARNING)')
def cli(log_level: Optional[str]):
    """gaptrack - supporting tracks for train cars with gaps"""
    setup_logging(log_level)
    for issue in get_config().validate_config():
        click.echo(f"Warning: {issue}", err=True)


@cli.command(name='build')
@click.option('--algo', 'algo', required=True, type=click.Choice(list(ALGORITHM_CHOICES)),
              help='Construction algorithm')
@click.option('--car', 'car_path', required=True, type=FILE, help='CarFile with the quarter wheels')
@click.option('--front-car', 'front_path', type=FILE, default=None,
              help='CarFile for the front quarter; builds a track for the whole car')
@click.option('--length', 'track_length', required=True, type=click.IntRange(min=1), help='Track length l')
@click.option('--seed', default=0, type=SEED, show_default=True, help='Seed for randomized builders')
@click.option('--out', 'out_path', required=True, type=FILE, help='Where to write the TrackFile')
@_handle_errors
def build_command(algo: str, car_path: Path, front_path: Optional[Path], track_length: int,
                  seed: int, out_path: Path):
    """Build a supporting track for a car"""
    algorithm = ALGORITHM_CHOICES[algo]
    car = _load_car(car_path)

    if front_path is not None:
        full_car = FullCar(rear=car, front=_load_car(front_path, "front car"))
        outcome = build_full_car(full_car, track_length, algorithm, seed)
    else:
        outcome = build(algorithm, validate_instance(car, track_length), seed)

    _write_text(out_path, encode_track(outcome.track) + "\n")
    click.echo(
        f"algorithm={outcome.algorithm.value} pillars={outcome.pillar_count} "
        f"alterations={outcome.alteration_count} phases={outcome.phase_count} "
        f"seed={'-' if outcome.seed is None else outcome.seed} p={outcome.install_probability:.6f}"
    )


@cli.command()
@click.option('--car', 'car_path', required=True, type=FILE, help='CarFile (rear quarter with --front-car)')
@click.option('--track', 'track_path', required=True, type=FILE, help='TrackFile to check')
@click.option('--front-car', 'front_path', type=FILE, default=None,
              help='CarFile for the front quarter; checks the whole car')
@IGNORED_SEED
@click.pass_context
@_handle_errors
def verify(ctx: click.Context, car_path: Path, track_path: Path, front_path: Optional[Path],
           seed: Optional[int]):
    """Check whether a track supports a car at every offset (exit 2 if not)"""
    car = _load_car(car_path)
    track = _load_track(track_path)

    if front_path is not None:
        report = full_car_coverage(FullCar(rear=car, front=_load_car(front_path, "front car")), track)
    else:
        report = coverage(validate_instance(car, track.track_length), track)

    if report.supported:
        click.echo("supported Y=0")
        return

    click.echo(f"unsupported Y={report.failure_count}")
    listed = ", ".join(str(k) for k in report.failing_offsets[:MAX_LISTED_OFFSETS])
    suffix = ", ..." if report.failure_count > MAX_LISTED_OFFSETS else ""
    click.echo(f"failing offsets: {listed}{suffix}")
    ctx.exit(2)


@cli.command()
@click.option('--car', 'car_path', required=True, type=FILE, help='CarFile with the quarter wheels')
@click.option('--length', 'track_length', required=True, type=click.IntRange(min=1), help='Track length l')
@click.option('--exact', 'mode', flag_value='exact', default=True, help='Branch-and-bound minimum (default)')
@click.option('--greedy', 'mode', flag_value='greedy', help='Greedy set cover')
@click.option('--cap', type=click.IntRange(min=1), default=None, help='Only look for tracks with at most this many pillars')
@click.option('--node-limit', type=click.IntRange(min=1), default=None,
              help='Search node limit (defaults to GAPTRACK_ORACLE_NODE_LIMIT)')
@click.option('--out', 'out_path', type=FILE, default=None, help='Where to write the TrackFile (stdout if absent)')
@IGNORED_SEED
@click.pass_context
@_handle_errors
def oracle(ctx: click.Context, car_path: Path, track_length: int, mode: str, cap: Optional[int],
           node_limit: Optional[int], out_path: Optional[Path], seed: Optional[int]):
    """Find a minimum (or greedy) supporting track"""
    instance = validate_instance(_load_car(car_path), track_length)

    if mode == 'greedy':
        if cap is not None:
            raise click.UsageError("--cap only applies to --exact")
        result = min_track_greedy(instance)
    else:
        result = min_track_exact(instance, size_cap=cap, node_limit=node_limit)

    if result.track is None:
        click.echo(f"no supporting track with at most {cap} pillars", err=True)
        ctx.exit(2)

    text = encode_track(result.track) + "\n"
    if out_path is None:
        click.echo(text, nl=False)
    else:
        _write_text(out_path, text)
    click.echo(
        f"oracle={mode} size={result.size} optimal={'yes' if result.optimal else 'no'} "
        f"nodes={result.explored_nodes} lower_bound={result.lower_bound}",
        err=out_path is None,
    )


def _parse_n_list(value: str) -> List[int]:
    try:
        n_list = [int(item) for item in value.split(',') if item.strip()]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got '{value}'")
    if not n_list or any(n < 1 for n in n_list):
        raise click.BadParameter("every n must be a positive integer")
    return n_list


@cli.command()
@click.option('--n-list', 'n_list', required=True, help='Comma-separated values of n, e.g. 4,8,16,32')
@click.option('--trials', required=True, type=click.IntRange(min=1), help='Qualifying cars per n')
@click.option('--seed', default=0, type=SEED, show_default=True, help='Sweep seed')
@click.option('--jobs', type=click.IntRange(min=1), default=None, help='Worker threads (defaults to GAPTRACK_JOBS)')
@click.option('--node-limit', type=click.IntRange(min=1), default=None,
              help='Search node limit per car (defaults to GAPTRACK_ORACLE_NODE_LIMIT)')
@click.option('--out', 'out_path', type=FILE, default=None, help='Write the sweep as CSV')
@_handle_errors
def lowerbound(n_list: str, trials: int, seed: int, jobs: Optional[int], node_limit: Optional[int],
               out_path: Optional[Path]):
    """Exact minimum track sizes for random cars (f = 2n, l = 4n)"""
    values = _parse_n_list(n_list)
    jobs = jobs or get_config().get_int('GAPTRACK_JOBS')
    report = lowerbound_sweep(values, trials, seed, jobs=jobs, node_limit=node_limit)

    if out_path is not None:
        _write_text(out_path, lowerbound_csv(report))
        click.echo(f"wrote {len(report.rows)} rows to {out_path}")
        return

    table = Table(title="Minimum track sizes", show_header=True, header_style="bold magenta")
    for column in ("n", "trials", "median", "mean", "min", "max", "counting bound", "discarded", "failures"):
        table.add_column(column, justify="right")
    for row in report.rows:
        table.add_row(
            str(row.n), str(row.trials),
            "-" if row.median_min_track is None else f"{row.median_min_track:.1f}",
            "-" if row.mean_min_track is None else f"{row.mean_min_track:.2f}",
            "-" if row.min_min_track is None else str(row.min_min_track),
            "-" if row.max_min_track is None else str(row.max_min_track),
            str(row.counting_bound), str(row.discarded_small_cars), str(row.oracle_failures),
        )
    console.print(table)


def _load_bench_config(path: Path) -> BenchConfig:
    text = _read_text(path, "bench config")
    try:
        return BenchConfig.model_validate(json.loads(text))
    except json.JSONDecodeError as e:
        raise click.ClickException(f"malformed bench config {path}: {e}")
    except ValidationError as e:
        _, message = first_error(e)
        raise click.ClickException(f"invalid bench config {path}: {message}")


@cli.command()
@click.option('--config', 'config_path', required=True, type=FILE, help='Bench configuration JSON')
@click.option('--out', 'out_path', required=True, type=FILE, help='Where to write the CSV')
@click.option('--jobs', type=click.IntRange(min=1), default=None, help='Worker threads (defaults to GAPTRACK_JOBS)')
@click.option('--timing/--no-timing', default=False, help='Record wall-clock runtimes')
@click.option('--seed', type=SEED, default=None, help='Override base_seed from the configuration')
@_handle_errors
def bench(config_path: Path, out_path: Path, jobs: Optional[int], timing: bool, seed: Optional[int]):
    """Run a benchmark configuration and write one CSV row per cell"""
    config = _load_bench_config(config_path)
    if timing:
        config = config.model_copy(update={'measure_runtime': True})
    if seed is not None:
        config = config.model_copy(update={'base_seed': seed})

    runner = BenchRunner(config, jobs=jobs)
    rows = runner.run()
    _write_text(out_path, bench_csv(rows))

    click.echo(f"wrote {len(rows)} rows to {out_path}")
    for family, n, algorithm, reason in runner.skipped_cells:
        click.echo(f"skipped {family.value} n={n} {algorithm.value}: {reason}", err=True)


@cli.command()
@click.option('--track', 'track_path', required=True, type=FILE, help='TrackFile to draw')
@click.option('--car', 'car_path', type=FILE, default=None, help='CarFile whose wheels to overlay')
@click.option('--offset', type=int, default=None, help='Offset of the car (needs --car)')
@IGNORED_SEED
@_handle_errors
def render(track_path: Path, car_path: Optional[Path], offset: Optional[int], seed: Optional[int]):
    """Draw a track as '#' (pillar) and '.' (gap), with wheels as 'W' on a pillar and 'w' over a gap"""
    track = _load_track(track_path)
    if (car_path is None) != (offset is None):
        raise click.UsageError("--car and --offset go together")

    instance = None
    if car_path is not None:
        instance = validate_instance(_load_car(car_path), track.track_length)
    click.echo(render_ascii(track, instance, offset))


@cli.command()
@click.argument('config_path', type=FILE)
@click.option('--force', is_flag=True, help='Overwrite an existing file')
@click.option('--seed', default=0, type=SEED, show_default=True, help='base_seed of the written configuration')
def init_config(config_path: Path, force: bool, seed: int):
    """Write a default bench configuration"""
    if config_path.exists() and not force:
        raise click.ClickException(f"{config_path} already exists (use --force to overwrite)")

    default_config = BenchConfig(
        instance_family=InstanceFamily.UNIFORM_RANDOM,
        n_list=(8, 16, 32, 64),
        length_multiplier=64,
        seeds=20,
        algorithms=tuple(algorithm for algorithm in BenchAlgorithm if algorithm != BenchAlgorithm.EVEN),
        base_seed=seed,
    )
    _write_text(config_path, json.dumps(default_config.model_dump(mode='json'), indent=2) + "\n")
    console.print(f"Configuration file created: [bold blue]{config_path}[/bold blue]")


def main(argv: Optional[List[str]] = None) -> int:
    """Run the CLI and return its exit code: 0 success, 1 usage or validation error, 2 unsupported"""
    try:
        result = cli.main(args=argv, prog_name="gaptrack", standalone_mode=False)
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.ClickException as e:
        e.show()
        return 1
    except click.exceptions.Abort:
        click.echo("Aborted!", err=True)
        return 1
    except GapTrackError as e:
        click.echo(f"Error: {e}", err=True)
        return 1
    return result if isinstance(result, int) else 0


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
