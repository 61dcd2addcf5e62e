"""Reference engines: a plain list and a heap-per-list.

Both are definitionally simple and serve as ground truth for the tree
engines. Ordering is on (value, element id), like the trees.
"""

from __future__ import annotations

import heapq
from collections.abc import Sequence
from dataclasses import dataclass, field

from .errors import EmptyList, Mismatch, UnknownElement
from .registry import ListRegistry
from .trees.core_tt import Element, ValidationReport, check_value


@dataclass
class NaiveList:
    """A list as an ordered sequence of elements."""

    elems: list[Element] = field(default_factory=list)

    def position(self, elem: int) -> int:
        for i, e in enumerate(self.elems):
            if e.id == elem:
                return i
        raise UnknownElement(f"element {elem} is not in this list")

    def ids(self) -> list[int]:
        return [e.id for e in self.elems]

    def values(self) -> list[int]:
        return [e.value for e in self.elems]

    def __len__(self) -> int:
        return len(self.elems)


def o_psort(lst: NaiveList, k: int) -> list[tuple[int, int]]:
    if not lst.elems:
        raise EmptyList("psort on an empty list")
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    ordered = sorted(lst.elems, key=lambda e: (e.value, e.id))
    return [(e.id, e.value) for e in ordered[:k]]


def o_changeval(lst: NaiveList, elem: int, value: int) -> None:
    check_value(value)
    i = lst.position(elem)
    lst.elems[i] = Element(elem, value)


def o_link(l1: NaiveList, l2: NaiveList) -> NaiveList:
    joined = NaiveList(l1.elems + l2.elems)
    l1.elems, l2.elems = [], []
    return joined


def o_cut(lst: NaiveList, elem: int) -> tuple[NaiveList, NaiveList]:
    i = lst.position(elem)
    head, tail = NaiveList(lst.elems[: i + 1]), NaiveList(lst.elems[i + 1 :])
    lst.elems = []
    return head, tail


class _SequenceEngine(ListRegistry[NaiveList]):
    def sequence(self, label: str) -> list[int]:
        return self._get(label).ids()

    def values(self, label: str) -> list[int]:
        return self._get(label).values()

    def size(self, label: str) -> int:
        return len(self._get(label))

    def validate(self) -> ValidationReport:
        report = ValidationReport()
        seen: set[int] = set()
        for label in self.labels():
            for e in self._lists[label].elems:
                if e.id in seen:
                    report.add(e, "distinct-keys", f"element {e.id} appears twice")
                seen.add(e.id)
        return report


class NaiveOracle(_SequenceEngine):
    """Lists as plain sequences; psort sorts a copy."""

    name = "oracle"

    def new(self, label: str, elements: Sequence[Element]) -> None:
        self._check_outputs(set(), label)
        self._put(label, NaiveList(list(elements)))

    def psort(self, label: str, k: int) -> list[tuple[int, int]]:
        lst = self._get(label)
        self.metrics.comparisons += len(lst)
        return o_psort(lst, k)

    def changeval(self, label: str, elem: int, value: int) -> None:
        o_changeval(self._get(label), elem, value)

    def link(self, a: str, b: str, out: str) -> None:
        if a == b:
            raise ValueError(f"cannot link list {a!r} with itself")
        self._get(a)
        self._get(b)
        self._check_outputs({a, b}, out)
        self._put(out, o_link(self._take(a), self._take(b)))

    def cut(self, label: str, elem: int, out_head: str, out_tail: str) -> None:
        self._get(label).position(elem)
        self._check_outputs({label}, out_head, out_tail)
        head, tail = o_cut(self._take(label), elem)
        self._put(out_head, head)
        self._put(out_tail, tail)


@dataclass
class _HeapList(NaiveList):
    heap: list[tuple[int, int]] = field(default_factory=list)

    def rebuild(self) -> None:
        self.heap = [(e.value, e.id) for e in self.elems]
        heapq.heapify(self.heap)


class PQOracle(_SequenceEngine):
    """Every list also kept as a binary heap of (value, id).

    changeval rebuilds the heap, psort pops k entries from a copy.
    """

    name = "pq"

    def new(self, label: str, elements: Sequence[Element]) -> None:
        self._check_outputs(set(), label)
        lst = _HeapList(list(elements))
        lst.rebuild()
        self._put(label, lst)

    def psort(self, label: str, k: int) -> list[tuple[int, int]]:
        lst = self._get(label)
        if not lst.elems:
            raise EmptyList("psort on an empty list")
        if k < 1:
            raise ValueError(f"k must be positive, got {k}")
        heap = list(lst.heap)  # type: ignore[attr-defined]
        out: list[tuple[int, int]] = []
        while heap and len(out) < k:
            value, elem = heapq.heappop(heap)
            self.metrics.pq_deletes += 1
            out.append((elem, value))
        return out

    def changeval(self, label: str, elem: int, value: int) -> None:
        lst = self._get(label)
        o_changeval(lst, elem, value)
        lst.rebuild()  # type: ignore[attr-defined]

    def link(self, a: str, b: str, out: str) -> None:
        if a == b:
            raise ValueError(f"cannot link list {a!r} with itself")
        la, lb = self._get(a), self._get(b)
        self._check_outputs({a, b}, out)
        joined = _HeapList(la.elems + lb.elems)
        joined.heap = la.heap + lb.heap  # type: ignore[attr-defined]
        heapq.heapify(joined.heap)
        self._take(a)
        self._take(b)
        self._put(out, joined)

    def cut(self, label: str, elem: int, out_head: str, out_tail: str) -> None:
        i = self._get(label).position(elem)
        self._check_outputs({label}, out_head, out_tail)
        elems = self._take(label).elems
        head, tail = _HeapList(elems[: i + 1]), _HeapList(elems[i + 1 :])
        head.rebuild()
        tail.rebuild()
        self._put(out_head, head)
        self._put(out_tail, tail)


def cross_check(naive: NaiveOracle, pq: PQOracle, k: int | None = None) -> None:
    """Raise Mismatch if the two oracles disagree on any live list."""
    if naive.labels() != pq.labels():
        raise Mismatch(-1, f"labels differ: {naive.labels()} vs {pq.labels()}")
    for label in naive.labels():
        if naive.sequence(label) != pq.sequence(label):
            raise Mismatch(-1, f"list {label!r}: sequences differ")
        n = naive.size(label)
        if n == 0:
            continue
        want = naive.psort(label, k or n)
        got = pq.psort(label, k or n)
        if want != got:
            raise Mismatch(-1, f"list {label!r}: psort {want} vs {got}")
