"""The engine protocol shared by the tree engines and the oracles."""

from __future__ import annotations

from collections.abc import Sequence
from typing import Protocol

from ..metrics import Metrics
from ..oracle import NaiveOracle, PQOracle
from ..trees.core_tt import Element, ValidationReport
from ..trees.ltt_update import LTTEngine
from ..trees.tt_dynamic import TTEngine


class Engine(Protocol):
    name: str
    metrics: Metrics

    def new(self, label: str, elements: Sequence[Element]) -> None: ...

    def psort(self, label: str, k: int) -> list[tuple[int, int]]: ...

    def changeval(self, label: str, elem: int, value: int) -> None: ...

    def link(self, a: str, b: str, out: str) -> None: ...

    def cut(self, label: str, elem: int, out_head: str, out_tail: str) -> None: ...

    def sequence(self, label: str) -> list[int]: ...

    def values(self, label: str) -> list[int]: ...

    def size(self, label: str) -> int: ...

    def labels(self) -> list[str]: ...

    def validate(self) -> ValidationReport: ...


ENGINES: dict[str, type] = {
    "tt": TTEngine,
    "ltt": LTTEngine,
    "oracle": NaiveOracle,
    "pq": PQOracle,
}

ENGINE_NAMES = tuple(ENGINES)


def make_engine(name: str) -> Engine:
    try:
        return ENGINES[name]()  # type: ignore[no-any-return]
    except KeyError:
        raise ValueError(
            f"unknown engine {name!r}; expected one of {', '.join(ENGINE_NAMES)}"
        ) from None


def parse_pair(spec: str) -> tuple[str, str]:
    """Parse an 'a:b' engine pair."""
    parts = spec.split(":")
    if len(parts) != 2 or not all(parts):
        raise ValueError(f"engine pair must look like 'ltt:oracle', got {spec!r}")
    for name in parts:
        if name not in ENGINES:
            raise ValueError(f"unknown engine {name!r} in pair {spec!r}")
    return parts[0], parts[1]
