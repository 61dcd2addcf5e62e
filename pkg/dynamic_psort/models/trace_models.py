"""Operation trace records, one JSON object per line."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Annotated, Any, Literal

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, ValidationError

from ..errors import TraceError


class _Record(BaseModel):
    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    def dump(self) -> dict[str, Any]:
        return self.model_dump(by_alias=True, exclude_none=True)


class NewOp(_Record):
    """Create a list from values, in order."""

    op: Literal["new"] = "new"
    label: str = Field(alias="list", description="Label of the list to create")
    values: list[int] = Field(min_length=1, description="List values in list order")


class PsortOp(_Record):
    """Report the k smallest values of a list."""

    op: Literal["psort"] = "psort"
    label: str = Field(alias="list", description="Label of the list to query")
    k: int = Field(ge=1, description="How many of the smallest values to report")
    expect: list[int] | None = Field(
        default=None, description="Expected values; a difference fails the run"
    )


class ChangevalOp(_Record):
    """Change the value of one element, selected by its current value."""

    op: Literal["changeval"] = "changeval"
    label: str = Field(alias="list", description="Label of the list holding the element")
    elem: int = Field(description="Current value of the element to change")
    value: int = Field(description="New value")


class LinkOp(_Record):
    """Concatenate list a and list b into out; a and b are consumed."""

    op: Literal["link"] = "link"
    a: str = Field(description="Label of the left list")
    b: str = Field(description="Label of the right list")
    out: str = Field(description="Label of the concatenation")


class CutOp(_Record):
    """Split a list after the selected element into two new lists."""

    op: Literal["cut"] = "cut"
    label: str = Field(alias="list", description="Label of the list to split")
    elem: int = Field(description="Current value of the last element of the head")
    out: list[str] = Field(
        min_length=2, max_length=2, description="Labels of the head and the tail"
    )


TraceRecord = Annotated[
    NewOp | PsortOp | ChangevalOp | LinkOp | CutOp, Field(discriminator="op")
]

_record_adapter: TypeAdapter[Any] = TypeAdapter(TraceRecord)


def parse_record(raw: str | dict[str, Any]) -> TraceRecord:
    try:
        if isinstance(raw, str):
            return _record_adapter.validate_json(raw)
        return _record_adapter.validate_python(raw)
    except ValidationError as e:
        raise TraceError(f"invalid trace record {raw!r}: {e}") from e


class OpTrace(BaseModel):
    """An ordered sequence of operations over labelled lists."""

    ops: list[TraceRecord] = Field(default_factory=list)

    def __len__(self) -> int:
        return len(self.ops)

    @classmethod
    def from_lines(cls, lines: list[str]) -> OpTrace:
        ops = []
        for number, line in enumerate(lines, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            try:
                ops.append(parse_record(text))
            except TraceError as e:
                raise TraceError(f"line {number}: {e}") from e
        return cls(ops=ops)

    def to_lines(self) -> list[str]:
        return [json.dumps(op.dump()) for op in self.ops]

    def dumps(self) -> list[dict[str, Any]]:
        return [op.dump() for op in self.ops]


def load_trace(path: str | Path) -> OpTrace:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise TraceError(f"cannot read trace {path}: {e}") from e
    return OpTrace.from_lines(text.splitlines())


def dump_trace(trace: OpTrace, path: str | Path) -> None:
    Path(path).write_text("\n".join(trace.to_lines()) + "\n", encoding="utf-8")
