"""Counter benchmarks and one-shot structure checks."""

from __future__ import annotations

import csv
import logging
import random
import time
from collections.abc import Callable, Sequence
from pathlib import Path

from ..config import config
from ..models import CSV_COLUMNS, BenchRow, CheckReport
from ..trees.core_tt import PHI, Element, build_elements, height_bound, make_elements, validate
from ..trees.ltt_core import build_ltt_elements, iterated_log, layer_number, layer_profile, validate_ltt
from .engines import Engine, make_engine

logger = logging.getLogger(__name__)


def random_values(rng: random.Random, n: int) -> list[int]:
    """n distinct values from the configured range."""
    span = config.value_range
    return rng.sample(range(-span, span + 1), n)


def _measure(
    engine: Engine, op: str, n: int, k: int, repeat: int, action: Callable[[], object]
) -> BenchRow:
    engine.metrics.reset()
    start = time.perf_counter_ns()
    action()
    engine.metrics.wall_time_ns = time.perf_counter_ns() - start
    return BenchRow(op=op, engine=engine.name, n=n, k=k, repeat=repeat, **engine.metrics.counters())


def bench_point(engine_name: str, n: int, k: int, repeat: int, seed: int) -> list[BenchRow]:
    """One build/psort/changeval/cut/link round on a fresh random list."""
    rng = random.Random(f"{seed}:{engine_name}:{n}:{k}:{repeat}")
    engine = make_engine(engine_name)
    elements = make_elements(random_values(rng, n))
    rows = [_measure(engine, "build", n, k, repeat, lambda: engine.new("L", elements))]
    rows.append(_measure(engine, "psort", n, k, repeat, lambda: engine.psort("L", k)))

    target = rng.choice(elements).id
    fresh = rng.randint(-config.value_range, config.value_range)
    while fresh in {e.value for e in elements}:
        fresh = rng.randint(-config.value_range, config.value_range)
    rows.append(
        _measure(engine, "changeval", n, k, repeat, lambda: engine.changeval("L", target, fresh))
    )

    at = rng.choice(elements).id
    rows.append(_measure(engine, "cut", n, k, repeat, lambda: engine.cut("L", at, "H", "T")))
    if engine.size("T"):
        rows.append(_measure(engine, "link", n, k, repeat, lambda: engine.link("H", "T", "L")))
    return rows


def bench(
    sizes: Sequence[int],
    ks: Sequence[int],
    engine: str = "ltt",
    repeats: int = 1,
    seed: int | None = None,
) -> list[BenchRow]:
    """Counter rows for every (n, k, repeat) on one engine."""
    if not sizes or not ks:
        raise ValueError("bench needs at least one size and one k")
    if any(n < 1 for n in sizes) or any(k < 1 for k in ks):
        raise ValueError("sizes and ks must be positive")
    base = config.default_seed if seed is None else seed
    rows: list[BenchRow] = []
    for n in sizes:
        for k in ks:
            for repeat in range(repeats):
                rows.extend(bench_point(engine, n, k, repeat, base))
            logger.info(f"bench {engine} n={n} k={k}: {repeats} repeats")
    return rows


def write_csv(rows: Sequence[BenchRow], path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.DictWriter(f, fieldnames=list(CSV_COLUMNS))
        writer.writeheader()
        for row in rows:
            writer.writerow(row.model_dump())


def check_structure(engine: str, n: int, seed: int) -> CheckReport:
    """Build a random structure of n elements and run its validator."""
    if engine not in ("tt", "ltt"):
        raise ValueError(f"check supports the tt and ltt engines, got {engine!r}")
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    rng = random.Random(seed)
    elements: list[Element] = make_elements(random_values(rng, n))
    if engine == "tt":
        t = build_elements(elements)
        report = validate(t)
        return CheckReport(
            engine=engine,
            n=n,
            seed=seed,
            ok=report.ok,
            status="success" if report.ok else "violation",
            height=t.height,
            height_bound=height_bound(n),
            violations=[v.to_dict() for v in report.violations],
        )
    ltt = build_ltt_elements(elements)
    report = validate_ltt(ltt)
    profile = layer_profile(ltt)
    return CheckReport(
        engine=engine,
        n=n,
        seed=seed,
        ok=report.ok,
        status="success" if report.ok else "violation",
        height=ltt.height,
        height_bound=height_bound(n),
        layer_number=layer_number(ltt),
        iterated_log=iterated_log(PHI, n),
        layer_profile={
            str(layer): {"trees": s.trees, "max_team_size": s.max_team_size, "leaves": s.leaves}
            for layer, s in profile.items()
        },
        violations=[v.to_dict() for v in report.violations],
    )
