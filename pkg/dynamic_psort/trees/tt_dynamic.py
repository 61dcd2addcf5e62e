"""Dynamic partial sorting over a single tournament tree.

psort pops nodes from a heap and, for every output, pushes the subordinates
along the output's principal path. changeval repairs keys on the leaf-to-root
walk. link splices the shorter tree into the spine of the taller one and
repairs balance with at most one rebalancing step. cut takes the leaf-to-root
path apart and re-joins the hanging subtrees on either side.
"""

from __future__ import annotations

import heapq
import logging
from collections.abc import Callable, Sequence

from ..errors import EmptyTree, UnknownElement
from ..metrics import Metrics
from ..registry import ListRegistry
from .core_tt import (
    Element,
    TournamentTree,
    TTNode,
    ValidationReport,
    attach,
    build_elements,
    check_value,
    continuation,
    pull,
    pull_shape,
    replace_child,
    root_of,
    rotate_left,
    rotate_right,
    smaller_child,
    subordinate,
    validate,
)

logger = logging.getLogger(__name__)

Rotation = Callable[[TTNode, Metrics], TTNode]

_NO_METRICS = Metrics()


def psort_tt(
    t: TournamentTree, k: int, metrics: Metrics | None = None
) -> list[tuple[int, int]]:
    """The min(k, n) smallest (element id, value) pairs, ascending. t is not modified."""
    if t.root is None:
        raise EmptyTree("psort on an empty tournament tree")
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    m = metrics or _NO_METRICS
    root = t.root
    queue: list[tuple[int, int, TTNode]] = [(root.value, root.tiebreak, root)]
    m.pq_inserts += 1
    out: list[tuple[int, int]] = []
    while queue and len(out) < k:
        _, _, u = heapq.heappop(queue)
        m.pq_deletes += 1
        out.append((u.tiebreak, u.value))
        w: TTNode | None = u
        while w is not None and not w.is_leaf:
            m.nodes_visited += 1
            m.comparisons += 1
            s = subordinate(w)
            heapq.heappush(queue, (s.value, s.tiebreak, s))
            m.pq_inserts += 1
            w = continuation(w)
        m.observe_queue(len(queue))
    return out


def changeval_tt(
    t: TournamentTree, leaf: TTNode, value: int, metrics: Metrics | None = None
) -> None:
    """Set the leaf's value and repair keys up to the first unchanged ancestor."""
    check_value(value)
    if t.root is None or root_of(leaf) is not t.root:
        raise UnknownElement(f"element {leaf.tiebreak} is not in this tree")
    m = metrics or _NO_METRICS
    leaf.value = value
    m.nodes_visited += 1
    x = leaf.parent
    while x is not None:
        m.nodes_visited += 1
        winner = smaller_child(x, m)
        if winner.value == x.value and winner.tiebreak == x.tiebreak:
            break
        x.value = winner.value
        x.tiebreak = winner.tiebreak
        x = x.parent


# ---------------------------------------------------------------------------
# Link
# ---------------------------------------------------------------------------


def splice(a: TTNode, b: TTNode, metrics: Metrics) -> TTNode:
    """Join roots a and b (a's leaves first) under a fresh node; returns it.

    The taller tree's spine is descended to the first node whose height is at
    most the other tree's height plus one. The fresh node replaces it there and
    may leave its new parent one level out of balance.
    """
    a.parent = None
    b.parent = None
    if a.height >= b.height:
        v = a
        while v.height > b.height + 1:
            metrics.nodes_visited += 1
            assert v.right is not None
            v = v.right
        above = v.parent
        node = v.spawn()
        attach(node, v, b)
    else:
        v = b
        while v.height > a.height + 1:
            metrics.nodes_visited += 1
            assert v.left is not None
            v = v.left
        above = v.parent
        node = v.spawn()
        attach(node, a, v)
    pull(node, metrics)
    replace_child(above, v, node)
    return node


def rebalance_at(
    x: TTNode, rot_left: Rotation, rot_right: Rotation, metrics: Metrics
) -> TTNode:
    """Fix shape at x after one child grew; returns the subtree's new root.

    A single rotation fixes an outer-heavy child. An inner-heavy child needs a
    double rotation, which is still counted as one rebalancing step.
    """
    pull_shape(x)
    left, right = x.left, x.right
    assert left is not None and right is not None
    if right.height - left.height > 1:
        assert right.left is not None and right.right is not None
        if right.left.height > right.right.height:
            rot_right(right.left, metrics)
            assert x.right is not None
            right = x.right
        rot_left(right, metrics)
        metrics.rotations += 1
        return right
    if left.height - right.height > 1:
        assert left.left is not None and left.right is not None
        if left.right.height > left.left.height:
            rot_left(left.right, metrics)
            assert x.left is not None
            left = x.left
        rot_right(left, metrics)
        metrics.rotations += 1
        return left
    return x


def rebalance_upward(
    x: TTNode | None, rot_left: Rotation, rot_right: Rotation, metrics: Metrics
) -> TTNode | None:
    """Walk from x to the root fixing heights, sizes and balance; returns the root."""
    top = None
    while x is not None:
        metrics.nodes_visited += 1
        top = rebalance_at(x, rot_left, rot_right, metrics)
        x = top.parent
    return top


def _pull_keys_upward(x: TTNode | None, metrics: Metrics) -> None:
    while x is not None:
        metrics.nodes_visited += 1
        winner = smaller_child(x, metrics)
        x.value = winner.value
        x.tiebreak = winner.tiebreak
        x = x.parent


def link_roots(
    a: TTNode | None, b: TTNode | None, metrics: Metrics | None = None
) -> TTNode | None:
    """Concatenate two tree roots (a first); either may be None."""
    if a is None:
        return b
    if b is None:
        return a
    m = metrics or _NO_METRICS
    node = splice(a, b, m)
    _pull_keys_upward(node.parent, m)
    root = rebalance_upward(node.parent, rotate_left, rotate_right, m)
    return root if root is not None else node


def link_tt(
    t1: TournamentTree, t2: TournamentTree, metrics: Metrics | None = None
) -> TournamentTree:
    """Concatenate t1 and t2 into one tree; both inputs are consumed."""
    root = link_roots(t1.root, t2.root, metrics)
    t1.root = t2.root = None
    t1.leaf_count = t2.leaf_count = 0
    return TournamentTree.of(root)


# ---------------------------------------------------------------------------
# Cut
# ---------------------------------------------------------------------------


def cut_roots(
    leaf: TTNode, metrics: Metrics | None = None
) -> tuple[TTNode, TTNode | None]:
    """Split the leaf's tree after the leaf; returns (head root, tail root).

    The i-th sibling hanging off the leaf-to-root path has height at most
    2i - 1; violations are counted, not raised.
    """
    m = metrics or _NO_METRICS
    head: TTNode = leaf
    tail: TTNode | None = None
    child = leaf
    p = leaf.parent
    leaf.parent = None
    i = 0
    while p is not None:
        i += 1
        m.nodes_visited += 1
        went_left = p.left is child
        s = p.right if went_left else p.left
        assert s is not None
        if s.height > 2 * i - 1:
            m.telescoping_violations += 1
            logger.warning(f"cut: detached subtree {i} has height {s.height} > {2 * i - 1}")
        above = p.parent
        p.left = p.right = p.parent = None
        s.parent = None
        if went_left:
            tail = link_roots(tail, s, m)
        else:
            joined = link_roots(s, head, m)
            assert joined is not None
            head = joined
        child, p = p, above
    return head, tail


def cut_tt(
    t: TournamentTree, leaf: TTNode, metrics: Metrics | None = None
) -> tuple[TournamentTree, TournamentTree]:
    """Split t after `leaf`: (head..leaf, remainder). t is consumed."""
    if t.root is None or root_of(leaf) is not t.root:
        raise UnknownElement(f"element {leaf.tiebreak} is not in this tree")
    head, tail = cut_roots(leaf, metrics)
    t.root = None
    t.leaf_count = 0
    return TournamentTree.of(head), TournamentTree.of(tail)


# ---------------------------------------------------------------------------
# Engine
# ---------------------------------------------------------------------------


class TTEngine(ListRegistry[TournamentTree]):
    """Lists kept as plain tournament trees, addressed by element id."""

    name = "tt"

    def __init__(self) -> None:
        super().__init__()
        self._index: dict[int, TTNode] = {}

    def _leaf(self, label: str, elem: int) -> TTNode:
        t = self._get(label)
        leaf = self._index.get(elem)
        if leaf is None or t.root is None or root_of(leaf) is not t.root:
            raise UnknownElement(f"element {elem} is not in list {label!r}")
        return leaf

    def new(self, label: str, elements: Sequence[Element]) -> None:
        self._check_outputs(set(), label)
        t = build_elements(elements)
        for leaf in t.leaves():
            self._index[leaf.tiebreak] = leaf
        self._put(label, t)

    def psort(self, label: str, k: int) -> list[tuple[int, int]]:
        return psort_tt(self._get(label), k, self.metrics)

    def changeval(self, label: str, elem: int, value: int) -> None:
        changeval_tt(self._get(label), self._leaf(label, elem), value, self.metrics)

    def link(self, a: str, b: str, out: str) -> None:
        if a == b:
            raise ValueError(f"cannot link list {a!r} with itself")
        self._get(a)
        self._get(b)
        self._check_outputs({a, b}, out)
        self._put(out, link_tt(self._take(a), self._take(b), self.metrics))

    def cut(self, label: str, elem: int, out_head: str, out_tail: str) -> None:
        leaf = self._leaf(label, elem)
        self._check_outputs({label}, out_head, out_tail)
        head, tail = cut_tt(self._take(label), leaf, self.metrics)
        self._put(out_head, head)
        self._put(out_tail, tail)

    def sequence(self, label: str) -> list[int]:
        return [leaf.tiebreak for leaf in self._get(label).leaves()]

    def values(self, label: str) -> list[int]:
        return self._get(label).values()

    def size(self, label: str) -> int:
        return self._get(label).leaf_count

    def height(self, label: str) -> int:
        return self._get(label).height

    def validate(self) -> ValidationReport:
        report = ValidationReport()
        for label in self.labels():
            report.extend(validate(self._lists[label]))
        return report


__all__ = [
    "TTEngine",
    "changeval_tt",
    "cut_roots",
    "cut_tt",
    "link_roots",
    "link_tt",
    "psort_tt",
    "rebalance_at",
    "rebalance_upward",
    "splice",
]
