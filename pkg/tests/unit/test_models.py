"""Trace records and report models."""

import json
from pathlib import Path

import pytest

from dynamic_psort.errors import TraceError
from dynamic_psort.models import (
    CSV_COLUMNS,
    BenchRow,
    ChangevalOp,
    CutOp,
    LinkOp,
    NewOp,
    OpTrace,
    PsortOp,
    RunReport,
    dump_trace,
    load_trace,
    parse_record,
)


def test_parse_records_by_op() -> None:
    assert isinstance(parse_record('{"op":"new","list":"L0","values":[3,6,9]}'), NewOp)
    psort = parse_record({"op": "psort", "list": "L0", "k": 3, "expect": [2, 3, 4]})
    assert isinstance(psort, PsortOp)
    assert psort.label == "L0" and psort.expect == [2, 3, 4]
    change = parse_record({"op": "changeval", "list": "L0", "elem": 2, "value": 10})
    assert isinstance(change, ChangevalOp) and change.value == 10
    assert isinstance(parse_record({"op": "link", "a": "L0", "b": "L1", "out": "L2"}), LinkOp)
    cut = parse_record({"op": "cut", "list": "L2", "elem": 9, "out": ["L3", "L4"]})
    assert isinstance(cut, CutOp) and cut.out == ["L3", "L4"]


@pytest.mark.parametrize(
    "raw",
    [
        {"op": "shuffle", "list": "L0"},
        {"op": "psort", "list": "L0", "k": 0},
        {"op": "new", "list": "L0", "values": []},
        {"op": "cut", "list": "L0", "elem": 1, "out": ["A"]},
        {"op": "link", "a": "L0", "b": "L1", "out": "L2", "extra": 1},
        "{not json",
    ],
)
def test_invalid_records_raise_trace_error(raw: object) -> None:
    with pytest.raises(TraceError):
        parse_record(raw)  # type: ignore[arg-type]


def test_dump_uses_wire_names() -> None:
    op = PsortOp(label="L0", k=2)
    assert op.dump() == {"op": "psort", "list": "L0", "k": 2}


def test_trace_lines_skip_comments_and_blanks() -> None:
    trace = OpTrace.from_lines(
        ["# header", "", '{"op":"new","list":"A","values":[1]}', '  {"op":"psort","list":"A","k":1}']
    )
    assert len(trace) == 2
    assert [json.loads(line)["op"] for line in trace.to_lines()] == ["new", "psort"]


def test_trace_line_numbers_in_errors() -> None:
    with pytest.raises(TraceError, match="line 2"):
        OpTrace.from_lines(['{"op":"new","list":"A","values":[1]}', '{"op":"nope"}'])


def test_trace_file_round_trip(tmp_path: Path, fixtures_dir: Path) -> None:
    trace = load_trace(fixtures_dir / "tournament.trace")
    assert trace.ops[0] == NewOp(label="L0", values=[3, 6, 9, 2, 4, 7, 8])
    out = tmp_path / "copy.trace"
    dump_trace(trace, out)
    assert load_trace(out) == trace


def test_missing_trace_file(tmp_path: Path) -> None:
    with pytest.raises(TraceError, match="cannot read"):
        load_trace(tmp_path / "absent.trace")


def test_bench_row_columns() -> None:
    row = BenchRow(op="psort", engine="tt", n=8, k=2, repeat=0, pq_inserts=5)
    assert tuple(row.model_dump()) == CSV_COLUMNS


def test_run_report_outputs() -> None:
    report = RunReport.model_validate(
        {
            "engine": "tt",
            "ops": [
                {"index": 0, "op": "new"},
                {"index": 1, "op": "psort", "output": [1, 2]},
            ],
        }
    )
    assert report.outputs() == [[1, 2]]
    assert report.status == "success"
