from __future__ import annotations

from typing import Any, Literal

from pydantic import BaseModel, Field

from ..metrics import COUNTER_FIELDS

Status = Literal["success", "mismatch", "error", "violation"]


class OpResult(BaseModel):
    """Outcome of one trace operation on the primary engine."""

    index: int = Field(description="Position of the operation in the trace")
    op: str = Field(description="Operation kind")
    output: list[int] | None = Field(
        default=None, description="psort output values, ascending"
    )
    counters: dict[str, int] = Field(
        default_factory=dict, description="Metrics counters for this operation"
    )
    bound_violations: list[str] = Field(default_factory=list)
    team_size_max: dict[str, int] = Field(
        default_factory=dict,
        description="Largest team per layer in the lists an ltt update produced",
    )


class MismatchInfo(BaseModel):
    index: int = Field(description="Index of the first divergent operation")
    detail: str


class RunReport(BaseModel):
    """Result of executing a trace."""

    status: Status = "success"
    engine: str
    verify: bool = False
    ops: list[OpResult] = Field(default_factory=list)
    final_lists: dict[str, list[int]] = Field(
        default_factory=dict, description="Values of every live list, in list order"
    )
    bound_violations: list[str] = Field(default_factory=list)
    validation_violations: list[dict[str, str]] = Field(default_factory=list)
    team_size_max: dict[str, int] = Field(
        default_factory=dict, description="Largest team per layer over the whole run"
    )

    def outputs(self) -> list[list[int]]:
        return [r.output for r in self.ops if r.output is not None]


class FuzzReport(BaseModel):
    """Result of one differential fuzz run. Contains no timings, so reruns compare equal."""

    status: Status = "success"
    seed: int
    ops: int
    max_size: int
    pair: list[str]
    mismatches: int = 0
    first_mismatch: MismatchInfo | None = None
    error_message: str | None = None
    reproducer: list[dict[str, Any]] | None = Field(
        default=None, description="Minimized trace that still reproduces the failure"
    )
    bound_violations: list[str] = Field(default_factory=list)
    validation_violations: list[dict[str, str]] = Field(default_factory=list)
    team_size_max: dict[str, int] = Field(
        default_factory=dict, description="Largest team per layer over the whole run"
    )
    psort_checks: int = Field(default=0, description="psort outputs compared")


class BenchRow(BaseModel):
    op: str
    engine: str
    n: int
    k: int
    repeat: int
    comparisons: int = 0
    pq_inserts: int = 0
    pq_deletes: int = 0
    nodes_visited: int = 0
    rotations: int = 0
    expose_iterations: int = 0
    wall_time_ns: int = 0


CSV_COLUMNS: tuple[str, ...] = ("op", "engine", "n", "k", "repeat", *COUNTER_FIELDS)


class CheckReport(BaseModel):
    """Validator output for one freshly built structure."""

    status: Status = "success"
    engine: str
    n: int
    seed: int
    ok: bool
    height: int
    height_bound: float
    layer_number: int = 0
    iterated_log: int = 0
    layer_profile: dict[str, dict[str, int]] = Field(default_factory=dict)
    violations: list[dict[str, str]] = Field(default_factory=list)
