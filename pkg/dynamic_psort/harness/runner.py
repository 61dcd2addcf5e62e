"""Trace execution across one or more engines with a shadow oracle."""

from __future__ import annotations

import logging
import time
from collections.abc import Sequence

from ..config import config
from ..errors import Mismatch, PartialSortError, TraceError
from ..models import (
    ChangevalOp,
    CutOp,
    LinkOp,
    NewOp,
    OpResult,
    OpTrace,
    PsortOp,
    RunReport,
    TraceRecord,
)
from ..oracle import NaiveOracle
from ..trees.core_tt import Element, make_elements
from ..trees.ltt_core import layer_profile
from .bounds import check_op_bounds
from .engines import Engine, make_engine

logger = logging.getLogger(__name__)


class TraceRunner:
    """Applies trace records to every engine and cross-checks them.

    A shadow NaiveOracle always runs alongside: it resolves value selectors to
    element ids. The engines share element ids because every `new` allocates
    its elements once. With `verify`, psort outputs and final sequences are
    compared against the shadow; with several engines they are also compared
    with each other.
    """

    def __init__(
        self,
        engines: Sequence[str],
        verify: bool = False,
        check_bounds: bool = False,
        validate_every: int | None = None,
    ) -> None:
        if not engines:
            raise ValueError("at least one engine is required")
        self.names = list(engines)
        self.engines: list[Engine] = [make_engine(name) for name in self.names]
        self.shadow = NaiveOracle()
        self.verify = verify
        self.check_bounds = check_bounds
        self.validate_every = (
            config.fuzz_validate_every if validate_every is None else validate_every
        )
        self.updates = 0
        self.psort_checks = 0
        self.bound_violations: list[str] = []
        self.validation_violations: list[dict[str, str]] = []
        self.team_size_max: dict[str, int] = {}

    @property
    def primary(self) -> Engine:
        return self.engines[0]

    def _resolve(self, index: int, label: str, selector: int) -> int:
        if label not in self.shadow:
            raise TraceError(f"op #{index}: no list labelled {label!r}")
        ids = self.shadow.sequence(label)
        values = self.shadow.values(label)
        matches = [e for e, v in zip(ids, values, strict=True) if v == selector]
        if not matches:
            raise TraceError(f"op #{index}: list {label!r} has no element of value {selector}")
        if len(matches) > 1:
            logger.debug(f"op #{index}: value {selector} is ambiguous, using the first")
        return matches[0]

    def _apply(
        self,
        engine: Engine,
        record: TraceRecord,
        elem: int | None,
        elements: Sequence[Element],
    ) -> list[tuple[int, int]] | None:
        if isinstance(record, NewOp):
            engine.new(record.label, elements)
        elif isinstance(record, PsortOp):
            return engine.psort(record.label, record.k)
        elif isinstance(record, ChangevalOp):
            assert elem is not None
            engine.changeval(record.label, elem, record.value)
        elif isinstance(record, LinkOp):
            engine.link(record.a, record.b, record.out)
        elif isinstance(record, CutOp):
            assert elem is not None
            engine.cut(record.label, elem, record.out[0], record.out[1])
        return None

    def _context(self, engine: Engine, record: TraceRecord) -> tuple[int, int, int]:
        """List size, height and height difference the op works on, taken before it runs."""

        def shape(label: str) -> tuple[int, int]:
            if label not in engine.labels():
                return 0, -1
            height = getattr(engine, "height", None)
            return engine.size(label), (height(label) if height else -1)

        if isinstance(record, LinkOp):
            (na, ha), (nb, hb) = shape(record.a), shape(record.b)
            return na + nb, max(ha, hb), abs(ha - hb)
        if isinstance(record, NewOp):
            return len(record.values), 0, 0
        n, h = shape(record.label)
        return n, h, 0

    def apply(self, index: int, record: TraceRecord) -> OpResult:
        elem: int | None = None
        if isinstance(record, ChangevalOp | CutOp):
            elem = self._resolve(index, record.label, record.elem)
        elements = make_elements(record.values) if isinstance(record, NewOp) else []

        try:
            expected = self._apply(self.shadow, record, elem, elements)
        except (PartialSortError, ValueError) as e:
            raise TraceError(f"op #{index} ({record.op}): {e}") from e

        result = OpResult(index=index, op=record.op)
        outputs: list[list[tuple[int, int]] | None] = []
        for name, engine in zip(self.names, self.engines, strict=True):
            n, height, height_diff = self._context(engine, record)
            engine.metrics.reset()
            start = time.perf_counter_ns()
            try:
                got = self._apply(engine, record, elem, elements)
            except (PartialSortError, ValueError) as e:
                raise Mismatch(index, f"{record.op} on {name} raised {e!r}; the oracle did not") from e
            engine.metrics.wall_time_ns = time.perf_counter_ns() - start
            outputs.append(got)
            self._record_teams(engine, record)
            if self.check_bounds:
                k = record.k if isinstance(record, PsortOp) else 0
                found = check_op_bounds(name, record.op, engine.metrics, n, k, height, height_diff)
                for v in found:
                    logger.warning(f"op #{index}: {v}")
                result.bound_violations.extend(found)
                self.bound_violations.extend(f"op #{index}: {v}" for v in found)
            if engine is self.primary:
                result.counters = engine.metrics.counters()
                result.team_size_max = {
                    str(layer): size for layer, size in sorted(engine.metrics.team_size_max.items())
                }

        if isinstance(record, PsortOp):
            self._compare_psort(index, record, expected, outputs)
            first = outputs[0]
            result.output = [v for _, v in first] if first is not None else None
        else:
            self.updates += 1
            if self.validate_every and self.updates % self.validate_every == 0:
                self._validate(index)
        return result

    def _record_teams(self, engine: Engine, record: TraceRecord) -> None:
        """Largest team per layer in the lists an update produced, kept outside the timing."""
        structure = getattr(engine, "structure", None)
        if structure is None or isinstance(record, PsortOp):
            return
        if isinstance(record, LinkOp):
            labels = [record.out]
        elif isinstance(record, CutOp):
            labels = list(record.out)
        else:
            labels = [record.label]
        for label in labels:
            layer_profile(structure(label), engine.metrics)
        for layer, size in engine.metrics.team_size_max.items():
            key = str(layer)
            self.team_size_max[key] = max(self.team_size_max.get(key, 0), size)

    def _compare_psort(
        self,
        index: int,
        record: PsortOp,
        expected: list[tuple[int, int]] | None,
        outputs: list[list[tuple[int, int]] | None],
    ) -> None:
        self.psort_checks += 1
        if record.expect is not None:
            got_values = [v for _, v in outputs[0] or []]
            if got_values != record.expect:
                raise Mismatch(index, f"psort {record.label} {record.k}: expected {record.expect}, got {got_values}")
        for name, got in zip(self.names, outputs, strict=True):
            if self.verify and got != expected:
                raise Mismatch(index, f"psort {record.label} {record.k}: {name} gave {got}, oracle {expected}")
            if got != outputs[0]:
                raise Mismatch(index, f"psort {record.label} {record.k}: {name} gave {got}, {self.names[0]} {outputs[0]}")

    def _validate(self, index: int) -> None:
        found: list[dict[str, str]] = []
        for name, engine in zip(self.names, self.engines, strict=True):
            report = engine.validate()
            if not report.ok:
                logger.warning(f"op #{index}: {name} failed validation: {report.rules()}")
                found.extend({"engine": name, **v.to_dict()} for v in report.violations)
        if found:
            self.validation_violations.extend({"index": str(index), **v} for v in found)
            raise Mismatch(index, f"structure validation failed: {found[0]}", found)

    def finish(self, index: int) -> dict[str, list[int]]:
        """Compare final sequences and validate every engine; returns the shadow's lists."""
        labels = self.shadow.labels()
        for name, engine in zip(self.names, self.engines, strict=True):
            if engine.labels() != labels:
                raise Mismatch(index, f"{name} holds lists {engine.labels()}, oracle {labels}")
            for label in labels:
                if self.verify and engine.sequence(label) != self.shadow.sequence(label):
                    raise Mismatch(index, f"list {label!r}: {name} element order differs from the oracle")
                if engine.sequence(label) != self.primary.sequence(label):
                    raise Mismatch(index, f"list {label!r}: {name} element order differs from {self.names[0]}")
        self._validate(index)
        return {label: self.shadow.values(label) for label in labels}

    def run(self, trace: OpTrace) -> RunReport:
        report = RunReport(engine="+".join(self.names), verify=self.verify)
        for index, record in enumerate(trace.ops):
            logger.debug(f"op #{index}: {record.dump()}")
            report.ops.append(self.apply(index, record))
        report.final_lists = self.finish(len(trace.ops))
        report.bound_violations = list(self.bound_violations)
        report.validation_violations = list(self.validation_violations)
        report.team_size_max = dict(self.team_size_max)
        if report.bound_violations:
            report.status = "violation"
        return report


def run_trace(
    trace: OpTrace,
    engine: str = "ltt",
    verify: bool = False,
    check_bounds: bool = False,
) -> RunReport:
    """Execute `trace` on one engine.

    Raises TraceError for unresolved references and Mismatch (with the index of
    the first divergent op) when verification or an `expect` fails.
    """
    report = TraceRunner([engine], verify=verify, check_bounds=check_bounds).run(trace)
    logger.info(f"ran {len(trace)} ops on {engine}: {report.status}")
    return report

