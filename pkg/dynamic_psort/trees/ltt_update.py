"""Updates on layered tournament trees: expose, rotations, link, cut, changeval.

Every update is defined in terms of the same updates one layer down. A team
tree is itself the top layer of a smaller LTT, so the functions here take and
return bare roots and recurse through the `down` leaves they touch. Leaves
survive cut and link (their `upp` and index entries stay valid); internal
nodes are created and dropped freely.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field

from ..errors import NoParent, NotInternal, NotLeftChild, NotRightChild
from ..metrics import Metrics
from ..registry import ListRegistry
from .core_tt import (
    MIN_SENTINEL,
    Element,
    TTNode,
    ValidationReport,
    check_value,
    next_leaf,
    prev_leaf,
    root_of,
    rotate_left,
    rotate_right,
    smaller_child,
    subordinate,
)
from .ltt_core import LTT, LTTNode, build_ltt_elements, validate_ltt
from .ltt_query import psort_ltt
from .tt_dynamic import rebalance_upward, splice

logger = logging.getLogger(__name__)

_NO_METRICS = Metrics()


# ---------------------------------------------------------------------------
# Expose and changeval
# ---------------------------------------------------------------------------


def _set_key(leaf: LTTNode, value: int, tiebreak: int, m: Metrics) -> None:
    leaf.value = value
    leaf.tiebreak = tiebreak
    m.nodes_visited += 1
    if leaf.parent is not None:
        _expose(leaf.parent, m)  # type: ignore[arg-type]


def _rewire_team(x: LTTNode, z: TTNode, m: Metrics) -> None:
    """Make x's team tree run from x.down straight into the team chain below z."""
    d = x.down
    assert d is not None
    head, _ = cut_root(d, m)
    team_z: LTTNode | None = None
    if not z.is_leaf:
        zd: LTTNode = z.down  # type: ignore[attr-defined]
        before = prev_leaf(zd)
        if before is None:
            team_z = root_of(zd)  # type: ignore[assignment]
        else:
            _, team_z = cut_root(before, m)  # type: ignore[arg-type]
    link_root(head, team_z, m)


def _expose(u: LTTNode, m: Metrics) -> None:
    x: LTTNode | None = u
    while x is not None:
        m.nodes_visited += 1
        if x.layer == 0:
            m.expose_iterations += 1
        z = smaller_child(x, m)
        z2 = x.right if z is x.left else x.left
        assert z2 is not None
        x.value = z.value
        x.tiebreak = z.tiebreak
        d = x.down
        assert d is not None, f"{x!r} has no team leaf"
        target = None if z.is_leaf else z.down  # type: ignore[attr-defined]
        if next_leaf(d) is not target:
            _rewire_team(x, z, m)
        if d.value != z2.value or d.tiebreak != z2.tiebreak:
            _set_key(d, z2.value, z2.tiebreak, m)
        x = x.parent  # type: ignore[assignment]


def expose(ltt: LTT | None, u: LTTNode, metrics: Metrics | None = None) -> None:
    """Repair keys and team trees on the walk from internal node u to its root.

    At every node the smaller child is taken as the continuation, the node's
    team leaf is cut loose from whatever followed it and re-linked to the
    continuation's team chain, and its key is set to the other child's key.
    When the team chain already runs into the continuation the cut and link
    are skipped.
    """
    if u.is_leaf:
        raise NotInternal(f"{u!r} is a leaf; expose needs an internal node")
    _expose(u, metrics or _NO_METRICS)
    if ltt is not None:
        ltt.bump()


def changeval_ltt(
    ltt: LTT, elem: int, value: int, metrics: Metrics | None = None
) -> None:
    """Set element `elem` to `value` and expose from its parent."""
    check_value(value)
    leaf = ltt.find(elem)
    _set_key(leaf, value, leaf.tiebreak, metrics or _NO_METRICS)
    ltt.bump()


# ---------------------------------------------------------------------------
# Rotations
# ---------------------------------------------------------------------------


def _separate(y: LTTNode, u: LTTNode, m: Metrics) -> None:
    g = y.parent
    if g is not None:
        cut_root(g.down, m)  # type: ignore[attr-defined]
    assert y.down is not None and u.down is not None
    cut_root(y.down, m)
    cut_root(u.down, m)


def rotate_left_ltt(
    u: LTTNode, metrics: Metrics | None = None, ltt: LTT | None = None
) -> LTTNode:
    """Left rotation at right child u, keeping every layer consistent.

    The team trees are cut above y = p(u), below y and below u, the plain
    rotation is applied, and y is exposed.
    """
    m = metrics or _NO_METRICS
    y: LTTNode | None = u.parent  # type: ignore[assignment]
    if y is None:
        raise NoParent(f"{u!r} has no parent to rotate with")
    if y.right is not u:
        raise NotRightChild(f"{u!r} is not a right child")
    _separate(y, u, m)
    rotate_left(u, m)
    _expose(y, m)
    if ltt is not None:
        ltt.root = root_of(u)  # type: ignore[assignment]
        ltt.bump()
    return u


def rotate_right_ltt(
    u: LTTNode, metrics: Metrics | None = None, ltt: LTT | None = None
) -> LTTNode:
    """Mirror image of rotate_left_ltt for a left child u."""
    m = metrics or _NO_METRICS
    y: LTTNode | None = u.parent  # type: ignore[assignment]
    if y is None:
        raise NoParent(f"{u!r} has no parent to rotate with")
    if y.left is not u:
        raise NotLeftChild(f"{u!r} is not a left child")
    _separate(y, u, m)
    rotate_right(u, m)
    _expose(y, m)
    if ltt is not None:
        ltt.root = root_of(u)  # type: ignore[assignment]
        ltt.bump()
    return u


# ---------------------------------------------------------------------------
# Link and cut on roots
# ---------------------------------------------------------------------------


def link_root(
    a: LTTNode | None, b: LTTNode | None, metrics: Metrics | None = None
) -> LTTNode | None:
    """Concatenate two same-layer roots (a first); either may be None."""
    if a is None:
        return b
    if b is None:
        return a
    m = metrics or _NO_METRICS
    node: LTTNode = splice(a, b, m)  # type: ignore[assignment]
    sub = subordinate(node)
    down = LTTNode(sub.value, sub.tiebreak, node.layer + 1)
    node.down = down
    down.upp = node
    _expose(node, m)
    root = rebalance_upward(node.parent, rotate_left_ltt, rotate_right_ltt, m)  # type: ignore[arg-type]
    top = root if root is not None else node
    top.parent = None
    return top  # type: ignore[return-value]


def cut_root(
    leaf: LTTNode, metrics: Metrics | None = None
) -> tuple[LTTNode, LTTNode | None]:
    """Split leaf's tree after the leaf; returns (head root, tail root).

    The leaf is first pushed down to the sentinel so its principal path runs to
    the root. That path, with its team tree, is then discarded and the
    subtrees hanging off it are linked back together on either side.
    """
    m = metrics or _NO_METRICS
    saved = (leaf.value, leaf.tiebreak)
    _set_key(leaf, MIN_SENTINEL, leaf.tiebreak, m)
    head: LTTNode | None = None
    tail: LTTNode | None = None
    child: LTTNode = leaf
    p: LTTNode | None = leaf.parent  # type: ignore[assignment]
    leaf.parent = None
    while p is not None:
        m.nodes_visited += 1
        went_left = p.left is child
        s: LTTNode = (p.right if went_left else p.left)  # type: ignore[assignment]
        above: LTTNode | None = p.parent  # type: ignore[assignment]
        p.left = p.right = p.parent = None
        p.down = None
        s.parent = None
        if went_left:
            tail = link_root(tail, s, m)
        else:
            head = link_root(s, head, m)
        child, p = p, above
    leaf.value, leaf.tiebreak = saved
    joined = link_root(head, leaf, m)
    assert joined is not None
    return joined, tail


# ---------------------------------------------------------------------------
# Public LTT operations
# ---------------------------------------------------------------------------


def link_ltt(l1: LTT, l2: LTT, metrics: Metrics | None = None) -> LTT:
    """Concatenate two LTTs (l1's elements first); both inputs are consumed."""
    index, other = l1.index, l2.index
    if other is not index:
        if len(other) > len(index):
            index, other = other, index
        index.update(other)
    root = link_root(l1.root, l2.root, metrics)
    for consumed in (l1, l2):
        consumed.root = None
        consumed.bump()
    return LTT(root, index)


def cut_ltt(ltt: LTT, elem: int, metrics: Metrics | None = None) -> tuple[LTT, LTT]:
    """Split after element `elem`: (head..elem, remainder). The input is consumed."""
    leaf = ltt.find(elem)
    head, tail = cut_root(leaf, metrics)
    ltt.root = None
    ltt.bump()
    return LTT(head, ltt.index), LTT(tail, ltt.index)


@dataclass
class ParentDownClosure:
    """Smallest node set holding a seed and closed under parent and down."""

    nodes: set[TTNode] = field(default_factory=set)

    def __contains__(self, node: object) -> bool:
        return node in self.nodes

    def __len__(self) -> int:
        return len(self.nodes)


def pd_closure_bruteforce(ltt: LTT | None, v: LTTNode) -> ParentDownClosure:
    seen: set[TTNode] = {v}
    pending: list[LTTNode] = [v]
    while pending:
        w = pending.pop()
        for nxt in (w.parent, w.down):
            if nxt is not None and nxt not in seen:
                seen.add(nxt)
                pending.append(nxt)  # type: ignore[arg-type]
    return ParentDownClosure(seen)


# ---------------------------------------------------------------------------
# Engine
# ---------------------------------------------------------------------------


class LTTEngine(ListRegistry[LTT]):
    """Lists kept as layered tournament trees sharing one element index."""

    name = "ltt"

    def __init__(self) -> None:
        super().__init__()
        self._index: dict[int, LTTNode] = {}

    def new(self, label: str, elements: Sequence[Element]) -> None:
        self._check_outputs(set(), label)
        self._put(label, build_ltt_elements(elements, self._index))

    def psort(self, label: str, k: int) -> list[tuple[int, int]]:
        return psort_ltt(self._get(label), k, self.metrics)

    def changeval(self, label: str, elem: int, value: int) -> None:
        changeval_ltt(self._get(label), elem, value, self.metrics)

    def link(self, a: str, b: str, out: str) -> None:
        if a == b:
            raise ValueError(f"cannot link list {a!r} with itself")
        self._get(a)
        self._get(b)
        self._check_outputs({a, b}, out)
        self._put(out, link_ltt(self._take(a), self._take(b), self.metrics))

    def cut(self, label: str, elem: int, out_head: str, out_tail: str) -> None:
        self._get(label).find(elem)
        self._check_outputs({label}, out_head, out_tail)
        head, tail = cut_ltt(self._take(label), elem, self.metrics)
        self._put(out_head, head)
        self._put(out_tail, tail)

    def sequence(self, label: str) -> list[int]:
        return self._get(label).elements()

    def values(self, label: str) -> list[int]:
        return self._get(label).values()

    def size(self, label: str) -> int:
        return self._get(label).leaf_count

    def height(self, label: str) -> int:
        return self._get(label).height

    def structure(self, label: str) -> LTT:
        return self._get(label)

    def validate(self) -> ValidationReport:
        report = ValidationReport()
        for label in self.labels():
            report.extend(validate_ltt(self._lists[label]))
        return report
