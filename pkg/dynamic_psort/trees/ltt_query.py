"""Lazy sorted enumeration over layered tournament trees.

An iterator over a tree keeps a heap of candidate nodes. Each candidate is an
internal node whose subordinate holds the smallest not-yet-output key of its
principal path; the heap minimum is therefore the superordinate of the next
output. The next subordinate of a path is found by advancing the iterator of
that path's team tree one layer down.
"""

from __future__ import annotations

import heapq
import itertools
from collections.abc import Iterator

from ..errors import EmptyList, EmptyTree, Invalidated
from ..metrics import Metrics
from .core_tt import (
    TTNode,
    path_nodes,
    principal_path_origin,
    root_of,
    subordinate,
    superordinate,
)
from .ltt_core import LTT, LTTNode

_NO_METRICS = Metrics()


class PsortIterator:
    """Enumerates the leaves of one tree in increasing key order.

    After every call the heap holds exactly the candidate set of the leaves
    output so far: seeding the team of the latest output happens at the end of
    the call that produced it.

    A call makes at most one heap delete and two heap inserts. `calls` counts
    the non-exhausted calls this iterator has served.
    """

    def __init__(
        self,
        team: LTTNode | None,
        owner: LTT | None = None,
        metrics: Metrics | None = None,
    ) -> None:
        if team is None:
            raise EmptyTree("cannot enumerate an empty tree")
        self.team = team
        self.last: LTTNode | None = None
        self.last_popped: LTTNode | None = None
        self._owner = owner
        self._version = owner.version if owner is not None else 0
        self._metrics = metrics or _NO_METRICS
        self._queue: list[tuple[int, int, int, LTTNode]] = []
        self._seq = itertools.count()
        self._children: dict[LTTNode, PsortIterator] = {}
        self._started = False
        self._exhausted = False
        self.calls = 0

    def __len__(self) -> int:
        return len(self._queue)

    def candidates(self) -> set[TTNode]:
        return {entry[3] for entry in self._queue}

    def _check(self) -> None:
        if self._owner is not None and self._owner.version != self._version:
            raise Invalidated("the LTT was updated after this iterator was created")

    def _child(self, root: LTTNode) -> PsortIterator:
        it = self._children.get(root)
        if it is None:
            it = PsortIterator(root, metrics=self._metrics)
            self._children[root] = it
        return it

    def _push_from(self, it: PsortIterator) -> int:
        b = it.advance()
        m = self._metrics
        if it.calls > m.max_team_calls:
            m.max_team_calls = it.calls
        if b is None:
            return 0
        x = b.upp
        assert x is not None
        heapq.heappush(self._queue, (b.value, b.tiebreak, next(self._seq), x))
        m.pq_inserts += 1
        m.observe_queue(len(self._queue))
        return 1

    def _seed(self, out: LTTNode) -> int:
        parent: LTTNode | None = out.parent  # type: ignore[assignment]
        if parent is None or parent.value != out.value or parent.tiebreak != out.tiebreak:
            return 0
        assert parent.down is not None
        return self._push_from(self._child(root_of(parent.down)))  # type: ignore[arg-type]

    def advance(self) -> LTTNode | None:
        """Next origin leaf in key order, or None when exhausted."""
        self._check()
        if self._exhausted:
            return None
        m = self._metrics
        inserts = deletes = 0
        if not self._started:
            self._started = True
            out: LTTNode = principal_path_origin(self.team, m)  # type: ignore[assignment]
        else:
            if not self._queue:
                self._exhausted = True
                return None
            x = heapq.heappop(self._queue)[3]
            m.pq_deletes += 1
            deletes += 1
            self.last_popped = x
            out = principal_path_origin(subordinate(x), m)  # type: ignore[assignment]
            assert x.down is not None
            inserts += self._push_from(self._child(root_of(x.down)))  # type: ignore[arg-type]
        self.calls += 1
        self.last = out
        inserts += self._seed(out)
        m.observe_call(inserts, deletes)
        return out

    def nxt(self) -> tuple[int, int] | None:
        """Next (element id, value) pair, or None when exhausted."""
        out = self.advance()
        return None if out is None else (out.tiebreak, out.value)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        while (item := self.nxt()) is not None:
            yield item


def make_iterator(
    team: LTTNode | None, owner: LTT | None = None, metrics: Metrics | None = None
) -> PsortIterator:
    return PsortIterator(team, owner, metrics)


def psort_ltt(ltt: LTT, k: int, metrics: Metrics | None = None) -> list[tuple[int, int]]:
    """The min(k, n) smallest (element id, value) pairs, ascending."""
    if ltt.root is None:
        raise EmptyList("psort on an empty list")
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    it = PsortIterator(ltt.root, ltt, metrics)
    out: list[tuple[int, int]] = []
    for _ in range(min(k, ltt.leaf_count)):
        item = it.nxt()
        assert item is not None
        out.append(item)
    return out


def iter_sorted(ltt: LTT) -> Iterator[tuple[int, int]]:
    """Every element of the list in increasing order."""
    if ltt.root is None:
        return iter(())
    return iter(PsortIterator(ltt.root, ltt))


def candidate_set_bruteforce(tree: TTNode, outputs: list[TTNode]) -> set[TTNode]:
    """Nodes on the outputs' principal paths whose subordinate comes next on that path.

    A path node v qualifies when v is not a superordinate of an output and
    every node of the path with a smaller subordinate key is one.
    """
    sups = {s for s in (superordinate(u) for u in outputs) if s is not None}
    found: set[TTNode] = set()
    seen_tops: set[TTNode] = set()
    for u in outputs:
        path = [w for w in path_nodes(u) if not w.is_leaf]
        if not path or path[0] in seen_tops:
            continue
        seen_tops.add(path[0])
        for v in path:
            if v in sups:
                continue
            sv = subordinate(v).key
            if all((w in sups) == (subordinate(w).key < sv) for w in path):
                found.add(v)
    return found
