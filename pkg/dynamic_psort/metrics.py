"""Operation counters threaded through every engine call."""

from __future__ import annotations

from dataclasses import dataclass, field, fields

COUNTER_FIELDS = (
    "comparisons",
    "pq_inserts",
    "pq_deletes",
    "nodes_visited",
    "rotations",
    "expose_iterations",
    "wall_time_ns",
)


@dataclass
class Metrics:
    """Instrumentation counters for one measured operation.

    `rotations` counts rebalancing steps: a double rotation is one step.
    `team_size_max` maps layer index to the largest team seen in that layer.
    The `max_call_*` fields are per-call maxima over every psort iterator
    involved; `max_team_calls` is the most calls any one team iterator served.
    """

    comparisons: int = 0
    pq_inserts: int = 0
    pq_deletes: int = 0
    nodes_visited: int = 0
    rotations: int = 0
    expose_iterations: int = 0
    wall_time_ns: int = 0
    max_queue_size: int = 0
    max_call_inserts: int = 0
    max_call_deletes: int = 0
    max_team_calls: int = 0
    telescoping_violations: int = 0
    team_size_max: dict[int, int] = field(default_factory=dict)

    @property
    def queue_ops(self) -> int:
        return self.pq_inserts + self.pq_deletes

    def reset(self) -> None:
        for f in fields(self):
            if f.name == "team_size_max":
                self.team_size_max = {}
            else:
                setattr(self, f.name, 0)

    def observe_queue(self, size: int) -> None:
        if size > self.max_queue_size:
            self.max_queue_size = size

    def observe_call(self, inserts: int, deletes: int) -> None:
        self.max_call_inserts = max(self.max_call_inserts, inserts)
        self.max_call_deletes = max(self.max_call_deletes, deletes)

    def counters(self) -> dict[str, int]:
        return {name: getattr(self, name) for name in COUNTER_FIELDS}

    def as_dict(self) -> dict[str, object]:
        out: dict[str, object] = dict(self.counters())
        out["max_queue_size"] = self.max_queue_size
        out["max_call_inserts"] = self.max_call_inserts
        out["max_call_deletes"] = self.max_call_deletes
        out["max_team_calls"] = self.max_team_calls
        out["telescoping_violations"] = self.telescoping_violations
        out["team_size_max"] = {str(k): v for k, v in sorted(self.team_size_max.items())}
        return out
