"""`dps` command line: run traces, fuzz engine pairs, benchmark counters, check structures.

run, fuzz and check print JSON to stdout (one object per line); bench writes a
CSV file. Exit status is 0 on success, 1 on mismatch, violation or error, and 2
on usage errors.
"""

import json
import logging
import sys
from typing import Any, NoReturn

import click

from .app_utils.telemetry import setup_logging
from .config import config, seed_override
from .errors import Mismatch, PartialSortError
from .harness.bench import bench as run_bench
from .harness.bench import check_structure, write_csv
from .harness.engines import ENGINE_NAMES, parse_pair
from .harness.fuzz import fuzz_many
from .harness.runner import run_trace
from .models import load_trace

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1


def _emit(payload: dict[str, Any]) -> None:
    click.echo(json.dumps(payload, sort_keys=True))


def _fail(message: str, **extra: Any) -> NoReturn:
    _emit({"status": "error", "error_message": message, **extra})
    sys.exit(EXIT_FAILED)


def _int_list(ctx: click.Context, param: click.Parameter, value: str) -> list[int]:
    try:
        items = [int(part) for part in value.split(",") if part.strip()]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got {value!r}") from None
    if not items or any(i < 1 for i in items):
        raise click.BadParameter(f"expected positive integers, got {value!r}")
    return items


def _pair(ctx: click.Context, param: click.Parameter, value: str) -> tuple[str, str]:
    try:
        return parse_pair(value)
    except ValueError as e:
        raise click.BadParameter(str(e)) from None


def _seed(seed: int) -> int:
    override = seed_override()
    if override is not None:
        logger.info(f"DPS_SEED={override} overrides --seed {seed}")
        return override
    return seed


@click.group()
@click.option(
    "--log-level",
    default=None,
    help="Logging level for stderr (default: DPS_LOG_LEVEL or WARNING)",
)
def cli(log_level: str | None) -> None:
    """Dynamic partial sorting engines and their verification harness."""
    setup_logging(log_level or config.log_level)


@cli.command()
@click.option(
    "--trace",
    "trace_path",
    required=True,
    type=click.Path(exists=True, dir_okay=False),
    help="JSON-lines trace file",
)
@click.option(
    "--engine",
    type=click.Choice(ENGINE_NAMES),
    default="ltt",
    show_default=True,
    help="Engine to execute the trace on",
)
@click.option("--verify", is_flag=True, help="Compare every psort and the final lists with the oracle")
@click.option("--check-bounds", is_flag=True, help="Check per-operation counter bounds")
def run(trace_path: str, engine: str, verify: bool, check_bounds: bool) -> None:
    """Execute a trace and print the run report."""
    try:
        trace = load_trace(trace_path)
        report = run_trace(trace, engine=engine, verify=verify, check_bounds=check_bounds)
    except Mismatch as e:
        _emit(
            {
                "status": "mismatch",
                "engine": engine,
                "index": e.index,
                "detail": e.detail,
                "validation_violations": e.violations,
            }
        )
        sys.exit(EXIT_FAILED)
    except (PartialSortError, ValueError) as e:
        _fail(str(e), engine=engine)
    _emit(report.model_dump())
    if report.status != "success":
        sys.exit(EXIT_FAILED)


@cli.command()
@click.option("--seed", type=int, default=config.default_seed, show_default=True, help="First seed")
@click.option("--ops", type=click.IntRange(min=1), default=1000, show_default=True, help="Operations per trace")
@click.option("--max-size", type=click.IntRange(min=1), default=64, show_default=True, help="Largest list size")
@click.option(
    "--pair",
    default="ltt:oracle",
    show_default=True,
    callback=_pair,
    help="Engines to compare, as A:B",
)
@click.option("--shrink/--no-shrink", default=True, show_default=True, help="Minimize failing traces")
@click.option("--runs", type=click.IntRange(min=1), default=1, show_default=True, help="Consecutive seeds to fuzz")
@click.option("--shards", type=click.IntRange(min=1), default=1, show_default=True, help="Worker processes")
def fuzz(
    seed: int,
    ops: int,
    max_size: int,
    pair: tuple[str, str],
    shrink: bool,
    runs: int,
    shards: int,
) -> None:
    """Differentially fuzz an engine pair; one JSON report per seed."""
    start = seed
    try:
        start = _seed(seed)
        reports = fuzz_many(range(start, start + runs), ops, max_size, pair, shrink, shards)
    except (PartialSortError, ValueError) as e:
        _fail(str(e), seed=start)
    failed = False
    for report in reports:
        _emit(report.model_dump())
        failed = failed or report.status != "success"
    if failed:
        sys.exit(EXIT_FAILED)


@cli.command()
@click.option("--sizes", required=True, callback=_int_list, help="Comma-separated list sizes")
@click.option("--ks", required=True, callback=_int_list, help="Comma-separated psort k values")
@click.option(
    "--engine",
    type=click.Choice(ENGINE_NAMES),
    default="ltt",
    show_default=True,
    help="Engine to measure",
)
@click.option("--repeats", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--seed", type=int, default=config.default_seed, show_default=True)
@click.option("--out", required=True, type=click.Path(dir_okay=False, writable=True), help="CSV output file")
def bench(
    sizes: list[int], ks: list[int], engine: str, repeats: int, seed: int, out: str
) -> None:
    """Measure operation counters and write them as CSV rows."""
    try:
        rows = run_bench(sizes, ks, engine, repeats, _seed(seed))
        write_csv(rows, out)
    except (PartialSortError, ValueError, OSError) as e:
        _fail(str(e), engine=engine)
    logger.info(f"wrote {len(rows)} rows to {out}")


@cli.command()
@click.option("--engine", type=click.Choice(["tt", "ltt"]), default="ltt", show_default=True)
@click.option("--n", "n", type=click.IntRange(min=1), required=True, help="Number of elements")
@click.option("--seed", type=int, default=config.default_seed, show_default=True)
def check(engine: str, n: int, seed: int) -> None:
    """Build a random structure, validate it and print the report."""
    try:
        report = check_structure(engine, n, _seed(seed))
    except (PartialSortError, ValueError) as e:
        _fail(str(e), engine=engine)
    _emit(report.model_dump())
    if not report.ok:
        sys.exit(EXIT_FAILED)


def main(args: list[str] | None = None) -> int:
    """Console entry point; returns the process exit code."""
    try:
        cli.main(args=args, prog_name="dps", standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except click.exceptions.Abort:
        click.echo("Aborted!", err=True)
        return EXIT_FAILED
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_FAILED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
