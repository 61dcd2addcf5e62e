"""Label -> list bookkeeping shared by every engine."""

from __future__ import annotations

from typing import Generic, TypeVar

from .errors import TraceError
from .metrics import Metrics

T = TypeVar("T")


class ListRegistry(Generic[T]):
    """Holds the live lists of one engine, keyed by trace label."""

    name = "base"

    def __init__(self) -> None:
        self._lists: dict[str, T] = {}
        self.metrics = Metrics()

    def labels(self) -> list[str]:
        return sorted(self._lists)

    def __contains__(self, label: object) -> bool:
        return label in self._lists

    def _get(self, label: str) -> T:
        try:
            return self._lists[label]
        except KeyError:
            raise TraceError(f"{self.name}: no list labelled {label!r}") from None

    def _take(self, label: str) -> T:
        value = self._get(label)
        del self._lists[label]
        return value

    def _put(self, label: str, value: T) -> None:
        if label in self._lists:
            raise TraceError(f"{self.name}: list {label!r} already exists")
        self._lists[label] = value

    def _check_outputs(self, consumed: set[str], *outputs: str) -> None:
        """Outputs may reuse consumed labels but not clash with live ones."""
        if len(set(outputs)) != len(outputs):
            raise TraceError(f"{self.name}: duplicate output labels {outputs}")
        for label in outputs:
            if label in self._lists and label not in consumed:
                raise TraceError(f"{self.name}: list {label!r} already exists")
