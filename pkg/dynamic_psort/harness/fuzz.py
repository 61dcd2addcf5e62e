"""Seeded differential fuzzing with greedy trace shrinking."""

from __future__ import annotations

import logging
import random
from collections.abc import Callable, Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor

from ..config import config
from ..errors import Mismatch, TraceError
from ..models import (
    ChangevalOp,
    CutOp,
    FuzzReport,
    LinkOp,
    MismatchInfo,
    NewOp,
    OpTrace,
    PsortOp,
    TraceRecord,
)
from .runner import TraceRunner

logger = logging.getLogger(__name__)

# psort, changeval, link, cut
OP_WEIGHTS = (0.40, 0.30, 0.15, 0.15)


class TraceGenerator:
    """Builds a random valid trace. Values stay distinct across all lists."""

    def __init__(self, seed: int, max_size: int, value_range: int | None = None) -> None:
        self.rng = random.Random(seed)
        self.max_size = max(1, max_size)
        self.value_range = value_range or config.value_range
        self.lists: dict[str, list[int]] = {}
        self.used: set[int] = set()
        self._labels = 0
        self.ops: list[TraceRecord] = []

    def _label(self) -> str:
        label = f"L{self._labels}"
        self._labels += 1
        return label

    def _fresh_value(self) -> int:
        while True:
            v = self.rng.randint(-self.value_range, self.value_range)
            if v not in self.used:
                self.used.add(v)
                return v

    def new_list(self) -> None:
        cap = max(1, self.max_size // config.new_list_max_fraction)
        values = [self._fresh_value() for _ in range(self.rng.randint(1, cap))]
        label = self._label()
        self.lists[label] = values
        self.ops.append(NewOp(label=label, values=values))

    def psort(self, label: str) -> None:
        size = len(self.lists[label])
        self.ops.append(PsortOp(label=label, k=self.rng.randint(1, 2 * size)))

    def changeval(self, label: str) -> None:
        values = self.lists[label]
        i = self.rng.randrange(len(values))
        new = self._fresh_value()
        self.ops.append(ChangevalOp(label=label, elem=values[i], value=new))
        values[i] = new

    def link(self) -> bool:
        labels = sorted(self.lists)
        pairs = [
            (a, b)
            for a in labels
            for b in labels
            if a != b and len(self.lists[a]) + len(self.lists[b]) <= self.max_size
        ]
        if not pairs:
            return False
        a, b = self.rng.choice(pairs)
        out = self._label()
        self.lists[out] = self.lists.pop(a) + self.lists.pop(b)
        self.ops.append(LinkOp(a=a, b=b, out=out))
        return True

    def cut(self, label: str) -> None:
        values = self.lists.pop(label)
        i = self.rng.randrange(len(values))
        head, tail = self._label(), self._label()
        self.lists[head] = values[: i + 1]
        self.lists[tail] = values[i + 1 :]
        self.ops.append(CutOp(label=label, elem=values[i], out=[head, tail]))

    def step(self) -> None:
        nonempty = sorted(label for label, values in self.lists.items() if values)
        if not nonempty:
            self.new_list()
            return
        kind = self.rng.choices(("psort", "changeval", "link", "cut"), OP_WEIGHTS)[0]
        if kind == "psort":
            self.psort(self.rng.choice(nonempty))
        elif kind == "changeval":
            self.changeval(self.rng.choice(nonempty))
        elif kind == "link":
            if not self.link():
                self.new_list()
        else:
            self.cut(self.rng.choice(nonempty))

    def generate(self, op_count: int) -> OpTrace:
        if not self.ops:
            self.new_list()
        while len(self.ops) < op_count:
            self.step()
        return OpTrace(ops=self.ops[:op_count])


def generate_trace(seed: int, op_count: int, max_size: int) -> OpTrace:
    return TraceGenerator(seed, max_size).generate(op_count)


def _removals(ops: list[TraceRecord], pred: Callable[[list[TraceRecord]], bool]) -> Iterator[list[TraceRecord]]:
    """Drop chunks (halving down to single ops) while pred still holds.

    Single-op passes repeat until one removes nothing.
    """
    chunk = max(1, len(ops) // 2)
    while True:
        removed = False
        start = 0
        while start < len(ops):
            candidate = ops[:start] + ops[start + chunk :]
            if candidate and pred(candidate):
                ops = candidate
                removed = True
                yield ops
            else:
                start += chunk
        if chunk == 1 and not removed:
            return
        chunk = max(1, chunk // 2)


def shrink(trace: OpTrace, pred: Callable[[OpTrace], bool]) -> OpTrace:
    """Greedy op removal: the result still satisfies pred, and so does no smaller chunk removal."""
    best = list(trace.ops)
    for smaller in _removals(best, lambda ops: pred(OpTrace(ops=ops))):
        best = smaller
        logger.debug(f"shrink: {len(best)} ops")
    return OpTrace(ops=best)


def reproduces(trace: OpTrace, pair: Sequence[str]) -> bool:
    try:
        TraceRunner(pair, verify=True, validate_every=0).run(trace)
    except Mismatch:
        return True
    except TraceError:
        return False
    return False


def fuzz(
    seed: int,
    op_count: int,
    max_size: int,
    pair: Sequence[str] = ("ltt", "oracle"),
    do_shrink: bool = True,
    check_bounds: bool = True,
) -> FuzzReport:
    """Generate a trace from `seed` and run it differentially on `pair`."""
    if op_count < 1:
        raise ValueError(f"op_count must be positive, got {op_count}")
    trace = generate_trace(seed, op_count, max_size)
    report = FuzzReport(seed=seed, ops=op_count, max_size=max_size, pair=list(pair))
    runner = TraceRunner(pair, verify=True, check_bounds=check_bounds)
    try:
        run = runner.run(trace)
        report.bound_violations = run.bound_violations
        if run.bound_violations:
            report.status = "violation"
    except Mismatch as e:
        report.status = "mismatch"
        report.mismatches = 1
        report.first_mismatch = MismatchInfo(index=e.index, detail=e.detail)
        logger.warning(f"fuzz seed={seed}: {e}")
        if do_shrink:
            prefix = OpTrace(ops=trace.ops[: e.index + 1])
            report.reproducer = shrink(prefix, lambda t: reproduces(t, pair)).dumps()
    except TraceError as e:
        report.status = "error"
        report.error_message = str(e)
    report.psort_checks = runner.psort_checks
    report.validation_violations = list(runner.validation_violations)
    report.team_size_max = dict(runner.team_size_max)
    logger.info(f"fuzz summary {report.model_dump_json()}")
    return report


def _fuzz_shard(args: tuple[int, int, int, tuple[str, str], bool]) -> FuzzReport:
    seed, op_count, max_size, pair, do_shrink = args
    return fuzz(seed, op_count, max_size, pair, do_shrink)


def fuzz_many(
    seeds: Sequence[int],
    op_count: int,
    max_size: int,
    pair: tuple[str, str] = ("ltt", "oracle"),
    do_shrink: bool = True,
    shards: int = 1,
) -> list[FuzzReport]:
    """One fuzz run per seed, spread over `shards` worker processes."""
    jobs = [(seed, op_count, max_size, pair, do_shrink) for seed in seeds]
    if shards <= 1 or len(jobs) <= 1:
        return [_fuzz_shard(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=shards) as pool:
        return list(pool.map(_fuzz_shard, jobs))
