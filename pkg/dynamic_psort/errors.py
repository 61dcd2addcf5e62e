"""Exception hierarchy shared by the engines, the harness and the CLI."""

from __future__ import annotations


class PartialSortError(Exception):
    """Base class for every error raised by dynamic_psort."""


class ConfigError(PartialSortError):
    pass


class EmptyInput(PartialSortError, ValueError):
    """A list of values was empty where at least one element is required."""


class SentinelValue(PartialSortError, ValueError):
    """A public input used the reserved minimum 64-bit value."""


class BadBase(PartialSortError, ValueError):
    pass


class NotInternal(PartialSortError):
    pass


class NotRightChild(PartialSortError):
    pass


class NotLeftChild(PartialSortError):
    pass


class NoParent(PartialSortError):
    pass


class EmptyTree(PartialSortError):
    pass


class EmptyList(PartialSortError):
    pass


class UnknownElement(PartialSortError, KeyError):
    """An element id (or harness label) does not resolve."""


class PathTooShort(PartialSortError):
    """The principal path has no internal node, so it has no team."""


class Invalidated(PartialSortError):
    """An iterator was used after the structure it enumerates was updated."""


class TraceError(PartialSortError):
    """A trace references a list label or element that does not exist."""


class Mismatch(PartialSortError):
    """Two engines (or an engine and an expectation) disagreed."""

    def __init__(
        self, index: int, detail: str, violations: list[dict[str, str]] | None = None
    ) -> None:
        super().__init__(f"op #{index}: {detail}")
        self.index = index
        self.detail = detail
        self.violations = violations or []
