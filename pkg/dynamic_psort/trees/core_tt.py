"""Tournament-tree nodes: construction, navigation, rotations and validation.

A tournament tree is a balanced full binary tree over a list. Every internal
node holds the minimum (value, tiebreak) key of its children, so the root holds
the list minimum. The tiebreak of a node is the id of the element its value
originates from; comparing on (value, tiebreak) keeps every key distinct even
when user values repeat, and equal values come out in element creation order.

Nodes are plain objects addressed by reference. Element ids stay stable across
every update; engines keep an id -> leaf index to resolve them.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Callable, Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from typing import Any

from ..errors import EmptyInput, NoParent, NotInternal, NotLeftChild, NotRightChild, SentinelValue
from ..metrics import Metrics

MIN_SENTINEL = -(2**63)
MAX_VALUE = 2**63 - 1
PHI = (1 + math.sqrt(5)) / 2
LOG_PHI = math.log(PHI)

# Float slack when comparing a measured height against log_phi(n).
_BOUND_EPS = 1e-9

Key = tuple[int, int]

_element_ids = itertools.count(1)


@dataclass(frozen=True, slots=True)
class Element:
    """A list member: process-unique id plus a signed 64-bit value."""

    id: int
    value: int


def check_value(value: int) -> int:
    if value == MIN_SENTINEL:
        raise SentinelValue(f"{value} is reserved as the internal minimum sentinel")
    if not (MIN_SENTINEL < value <= MAX_VALUE):
        raise ValueError(f"{value} does not fit a signed 64-bit integer")
    return value


def make_elements(values: Iterable[int]) -> list[Element]:
    """Allocate fresh element ids, in list order, for `values`."""
    return [Element(next(_element_ids), check_value(v)) for v in values]


class TTNode:
    """Tournament-tree node. Leaves have no children and height 0."""

    __slots__ = ("height", "left", "parent", "right", "size", "tiebreak", "value")

    def __init__(self, value: int, tiebreak: int) -> None:
        self.parent: TTNode | None = None
        self.left: TTNode | None = None
        self.right: TTNode | None = None
        self.value = value
        self.tiebreak = tiebreak
        self.height = 0
        self.size = 1

    @property
    def key(self) -> Key:
        return (self.value, self.tiebreak)

    @property
    def is_leaf(self) -> bool:
        return self.left is None and self.right is None

    @property
    def elem(self) -> int | None:
        """Element id carried by a leaf; None for internal nodes."""
        return self.tiebreak if self.is_leaf else None

    def spawn(self) -> TTNode:
        """Create a fresh internal node of the same kind (and layer) as self."""
        node = type(self)(self.value, self.tiebreak)
        node.height = 1
        return node

    def __repr__(self) -> str:
        kind = "leaf" if self.is_leaf else f"h={self.height}"
        return f"<{type(self).__name__} {self.value}#{self.tiebreak} {kind}>"


@dataclass
class TournamentTree:
    """Root handle plus leaf count; root None is the empty tree."""

    root: TTNode | None = None
    leaf_count: int = 0

    @classmethod
    def of(cls, root: TTNode | None) -> TournamentTree:
        if root is not None:
            root.parent = None
        return cls(root, 0 if root is None else root.size)

    @property
    def height(self) -> int:
        return -1 if self.root is None else self.root.height

    def is_empty(self) -> bool:
        return self.root is None

    def leaves(self) -> Iterator[TTNode]:
        return iter_leaves(self.root)

    def values(self) -> list[int]:
        return [leaf.value for leaf in iter_leaves(self.root)]


@dataclass
class Violation:
    node: Any
    rule: str
    detail: str

    def to_dict(self) -> dict[str, str]:
        return {"node": repr(self.node), "rule": self.rule, "detail": self.detail}


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, node: Any, rule: str, detail: str) -> None:
        self.violations.append(Violation(node, rule, detail))

    def extend(self, other: ValidationReport) -> None:
        self.violations.extend(other.violations)

    def rules(self) -> set[str]:
        return {v.rule for v in self.violations}

    def to_dict(self) -> dict[str, Any]:
        return {"ok": self.ok, "violations": [v.to_dict() for v in self.violations]}


# ---------------------------------------------------------------------------
# Key helpers
# ---------------------------------------------------------------------------


def key_lt(a: TTNode, b: TTNode) -> bool:
    return a.value < b.value or (a.value == b.value and a.tiebreak < b.tiebreak)


def smaller_child(v: TTNode, metrics: Metrics | None = None) -> TTNode:
    left, right = v.left, v.right
    assert left is not None and right is not None
    if metrics is not None:
        metrics.comparisons += 1
    return right if key_lt(right, left) else left


def pull_shape(v: TTNode) -> None:
    """Recompute height and size of an internal node from its children."""
    left, right = v.left, v.right
    assert left is not None and right is not None
    v.height = (left.height if left.height > right.height else right.height) + 1
    v.size = left.size + right.size


def pull(v: TTNode, metrics: Metrics | None = None) -> None:
    """Recompute height, size and (value, tiebreak) of an internal node."""
    pull_shape(v)
    winner = smaller_child(v, metrics)
    v.value = winner.value
    v.tiebreak = winner.tiebreak


def attach(parent: TTNode, left: TTNode, right: TTNode) -> None:
    parent.left = left
    parent.right = right
    left.parent = parent
    right.parent = parent


def replace_child(parent: TTNode | None, old: TTNode, new: TTNode) -> None:
    """Put `new` where `old` hangs under `parent` (or make it a root)."""
    new.parent = parent
    if parent is None:
        return
    if parent.left is old:
        parent.left = new
    else:
        parent.right = new


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------


def build_keys(
    keys: Sequence[Key], make_leaf: Callable[[int, int], TTNode] = TTNode
) -> TTNode:
    """Build a balanced full tree over `keys`; the left half gets ceil(n/2) leaves."""
    if not keys:
        raise EmptyInput("cannot build a tournament tree over no keys")

    def build_range(lo: int, hi: int) -> TTNode:
        if hi - lo == 1:
            value, tiebreak = keys[lo]
            return make_leaf(value, tiebreak)
        mid = lo + (hi - lo + 1) // 2
        left = build_range(lo, mid)
        right = build_range(mid, hi)
        node = left.spawn()
        attach(node, left, right)
        pull(node)
        return node

    return build_range(0, len(keys))


def build_elements(
    elements: Sequence[Element], make_leaf: Callable[[int, int], TTNode] = TTNode
) -> TournamentTree:
    if not elements:
        raise EmptyInput("cannot build a tournament tree over an empty list")
    return TournamentTree.of(build_keys([(e.value, e.id) for e in elements], make_leaf))


def build(values: Sequence[int]) -> TournamentTree:
    """Build the tournament tree of `values`, assigning fresh element ids."""
    if not values:
        raise EmptyInput("cannot build a tournament tree over an empty list")
    return build_elements(make_elements(values))


# ---------------------------------------------------------------------------
# Navigation
# ---------------------------------------------------------------------------


def continuation(u: TTNode) -> TTNode | None:
    """Child of u on u's principal path, or None for a leaf."""
    if u.is_leaf:
        return None
    assert u.left is not None and u.right is not None
    if u.left.value == u.value and u.left.tiebreak == u.tiebreak:
        return u.left
    if u.right.value == u.value and u.right.tiebreak == u.tiebreak:
        return u.right
    return None


def subordinate(u: TTNode) -> TTNode:
    """Child of u that is not on u's principal path (the larger child)."""
    if u.is_leaf:
        raise NotInternal(f"{u!r} is a leaf and has no subordinate")
    assert u.left is not None and u.right is not None
    return u.left if key_lt(u.right, u.left) else u.right


def principal_path_origin(u: TTNode, metrics: Metrics | None = None) -> TTNode:
    """The leaf u's value originates from."""
    while not u.is_leaf:
        if metrics is not None:
            metrics.nodes_visited += 1
        u = smaller_child(u)
    return u


def path_top(u: TTNode) -> TTNode:
    """Topmost node of u's principal path."""
    p = u.parent
    while p is not None and p.value == u.value and p.tiebreak == u.tiebreak:
        u = p
        p = u.parent
    return u


def path_nodes(u: TTNode) -> list[TTNode]:
    """All nodes of u's principal path, top first, origin last."""
    nodes = [path_top(u)]
    nxt = continuation(nodes[-1])
    while nxt is not None:
        nodes.append(nxt)
        nxt = continuation(nxt)
    return nodes


def superordinate(v: TTNode) -> TTNode | None:
    """Node whose subordinate heads v's principal path (None on the root path)."""
    return path_top(v).parent


def sibling(u: TTNode) -> TTNode | None:
    p = u.parent
    if p is None:
        return None
    return p.right if p.left is u else p.left


def root_of(u: TTNode) -> TTNode:
    while u.parent is not None:
        u = u.parent
    return u


def depth(u: TTNode) -> int:
    d = 0
    while u.parent is not None:
        u = u.parent
        d += 1
    return d


def iter_leaves(root: TTNode | None) -> Iterator[TTNode]:
    """Leaves left to right."""
    stack: list[TTNode] = []
    node = root
    while stack or node is not None:
        while node is not None:
            stack.append(node)
            node = node.left
        node = stack.pop()
        if node.is_leaf:
            yield node
        node = node.right


def iter_nodes(root: TTNode | None) -> Iterator[TTNode]:
    """Pre-order traversal."""
    stack = [root] if root is not None else []
    while stack:
        node = stack.pop()
        yield node
        if node.right is not None:
            stack.append(node.right)
        if node.left is not None:
            stack.append(node.left)


def leftmost_leaf(u: TTNode) -> TTNode:
    while u.left is not None:
        u = u.left
    return u


def rightmost_leaf(u: TTNode) -> TTNode:
    while u.right is not None:
        u = u.right
    return u


def next_leaf(u: TTNode) -> TTNode | None:
    """In-order successor leaf of leaf u within its tree."""
    while u.parent is not None and u.parent.right is u:
        u = u.parent
    if u.parent is None:
        return None
    assert u.parent.right is not None
    return leftmost_leaf(u.parent.right)


def prev_leaf(u: TTNode) -> TTNode | None:
    """In-order predecessor leaf of leaf u within its tree."""
    while u.parent is not None and u.parent.left is u:
        u = u.parent
    if u.parent is None:
        return None
    assert u.parent.left is not None
    return rightmost_leaf(u.parent.left)


# ---------------------------------------------------------------------------
# Rotations
# ---------------------------------------------------------------------------


def rotate_left(u: TTNode, metrics: Metrics | None = None) -> TTNode:
    """Left rotation at right child u; u takes its parent's position.

    The former parent becomes u's left child and inherits u's former left
    subtree. Both nodes get height, size and key recomputed.
    """
    p = u.parent
    if p is None:
        raise NoParent(f"{u!r} has no parent to rotate with")
    if p.right is not u:
        raise NotRightChild(f"{u!r} is not a right child")
    inner = u.left
    assert inner is not None
    replace_child(p.parent, p, u)
    p.right = inner
    inner.parent = p
    u.left = p
    p.parent = u
    pull(p, metrics)
    pull(u, metrics)
    return u


def rotate_right(u: TTNode, metrics: Metrics | None = None) -> TTNode:
    """Mirror image of rotate_left for a left child u."""
    p = u.parent
    if p is None:
        raise NoParent(f"{u!r} has no parent to rotate with")
    if p.left is not u:
        raise NotLeftChild(f"{u!r} is not a left child")
    inner = u.right
    assert inner is not None
    replace_child(p.parent, p, u)
    p.left = inner
    inner.parent = p
    u.right = p
    p.parent = u
    pull(p, metrics)
    pull(u, metrics)
    return u


# ---------------------------------------------------------------------------
# Bounds and validation
# ---------------------------------------------------------------------------


def fib_min_leaves(h: int) -> int:
    """Fewest leaves a balanced full tree of height h can have."""
    a, b = 1, 2
    if h == 0:
        return 1
    for _ in range(h - 1):
        a, b = b, a + b
    return b


def height_bound(n: int) -> float:
    """log_phi(n), the height ceiling of a tournament tree with n leaves."""
    return math.log(n) / LOG_PHI if n > 1 else 0.0


def within_height_bound(h: int, n: int) -> bool:
    return n >= fib_min_leaves(h) and h <= height_bound(n) + _BOUND_EPS


def validate_subtree(root: TTNode, report: ValidationReport) -> int:
    """Check every structural rule below `root`; returns the leaf count seen."""
    leaves = 0
    seen_keys: set[Key] = set()
    for node in iter_nodes(root):
        left, right = node.left, node.right
        if left is None or right is None:
            if left is not None or right is not None:
                report.add(node, "fullness", "internal node with a single child")
                continue
            leaves += 1
            if node.height != 0:
                report.add(node, "height", f"leaf height {node.height} != 0")
            if node.size != 1:
                report.add(node, "size", f"leaf size {node.size} != 1")
            if node.key in seen_keys:
                report.add(node, "distinct-keys", f"key {node.key} appears twice")
            seen_keys.add(node.key)
            continue

        if left.parent is not node or right.parent is not node:
            report.add(node, "parent-link", "child does not point back to node")
        hl, hr = left.height, right.height
        if node.height != max(hl, hr) + 1:
            report.add(node, "height", f"stored {node.height}, expected {max(hl, hr) + 1}")
        if abs(hl - hr) > 1:
            report.add(node, "balance", f"child heights {hl} and {hr}")
        if node.size != left.size + right.size:
            report.add(node, "size", f"stored {node.size}, expected {left.size + right.size}")
        winner = right if key_lt(right, left) else left
        if node.key != winner.key:
            report.add(node, "min-of-children", f"key {node.key}, children min {winner.key}")
        equal = (left.key == node.key) + (right.key == node.key)
        if equal != 1:
            report.add(node, "principal-path", f"{equal} children share the node key")
    return leaves


def validate_root(
    root: TTNode | None, leaf_count: int | None = None
) -> ValidationReport:
    report = ValidationReport()
    if root is None:
        if leaf_count:
            report.add(None, "leaf-count", f"empty tree with leaf_count {leaf_count}")
        return report
    if root.parent is not None:
        report.add(root, "root", "root has a parent")
    seen = validate_subtree(root, report)
    if leaf_count is not None and leaf_count != seen:
        report.add(root, "leaf-count", f"leaf_count {leaf_count}, counted {seen}")
    if not within_height_bound(root.height, seen):
        report.add(
            root,
            "height-bound",
            f"height {root.height} exceeds log_phi({seen}) = {height_bound(seen):.3f}",
        )
    return report


def validate(t: TournamentTree) -> ValidationReport:
    """Check fullness, balance, heights, keys, leaf count and the height bound."""
    return validate_root(t.root, t.leaf_count)
