"""Layered tournament trees.

Every principal path with at least one internal node has a team: the keys of
the subordinates along the path, topmost first. The team is stored one layer
down as its own tournament tree, which in turn has teams of its own. Each
internal node v owns the team-tree leaf `v.down` holding its subordinate's
key, and that leaf points back with `upp`.

Team trees are not registered anywhere. A team tree is whatever tree a given
`down` leaf currently hangs in, found with `root_of`.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass, field

from ..errors import BadBase, PathTooShort, UnknownElement
from ..metrics import Metrics
from .core_tt import (
    LOG_PHI,
    PHI,
    Element,
    TTNode,
    ValidationReport,
    build_keys,
    continuation,
    iter_leaves,
    iter_nodes,
    make_elements,
    path_top,
    root_of,
    subordinate,
    validate_root,
)

logger = logging.getLogger(__name__)

_BOUND_EPS = 1e-9


class LTTNode(TTNode):
    """Tournament-tree node with cross-layer links."""

    __slots__ = ("down", "layer", "upp")

    def __init__(self, value: int, tiebreak: int, layer: int = 0) -> None:
        super().__init__(value, tiebreak)
        self.down: LTTNode | None = None
        self.upp: LTTNode | None = None
        self.layer = layer

    def spawn(self) -> LTTNode:
        node = LTTNode(self.value, self.tiebreak, self.layer)
        node.height = 1
        return node


def leaf_factory(layer: int) -> Callable[[int, int], LTTNode]:
    def make(value: int, tiebreak: int) -> LTTNode:
        return LTTNode(value, tiebreak, layer)

    return make


@dataclass(eq=False)
class LTT:
    """A layered tournament tree: the layer-0 root plus an element index.

    The index may be shared by several LTTs; membership is decided by walking
    from the indexed leaf to the root. `version` changes on every update.
    """

    root: LTTNode | None = None
    index: dict[int, LTTNode] = field(default_factory=dict)
    version: int = 0

    @property
    def leaf_count(self) -> int:
        return 0 if self.root is None else self.root.size

    @property
    def height(self) -> int:
        return -1 if self.root is None else self.root.height

    def is_empty(self) -> bool:
        return self.root is None

    def find(self, elem: int) -> LTTNode:
        leaf = self.index.get(elem)
        if leaf is None or self.root is None or root_of(leaf) is not self.root:
            raise UnknownElement(f"element {elem} is not in this list")
        return leaf

    def leaves(self) -> Iterator[LTTNode]:
        return iter_leaves(self.root)  # type: ignore[return-value]

    def values(self) -> list[int]:
        return [leaf.value for leaf in iter_leaves(self.root)]

    def elements(self) -> list[int]:
        return [leaf.tiebreak for leaf in iter_leaves(self.root)]

    def bump(self) -> None:
        self.version += 1


# ---------------------------------------------------------------------------
# Paths and teams
# ---------------------------------------------------------------------------


def path_internals(v: TTNode) -> list[LTTNode]:
    """Internal nodes of v's principal path, top first."""
    nodes: list[LTTNode] = []
    w: TTNode | None = path_top(v)
    while w is not None and not w.is_leaf:
        nodes.append(w)  # type: ignore[arg-type]
        w = continuation(w)
    return nodes


def team_root(v: TTNode) -> LTTNode | None:
    """Root of the team tree of v's principal path, or None for a bare leaf path."""
    internals = path_internals(v)
    if not internals or internals[0].down is None:
        return None
    return root_of(internals[0].down)  # type: ignore[return-value]


def team_of(ltt: LTT | None, p: TTNode) -> list[int]:
    """Subordinate values along p's principal path, topmost first."""
    internals = path_internals(p)
    if not internals:
        raise PathTooShort(f"principal path of {p!r} has no internal node")
    return [subordinate(w).value for w in internals]


def attach_teams(root: LTTNode) -> None:
    """Build and wire the team trees of every principal path below `root`, recursively."""
    pending = [root]
    while pending:
        tree = pending.pop()
        for top in iter_nodes(tree):
            if top.is_leaf:
                continue
            parent = top.parent
            if parent is not None and parent.key == top.key:
                continue
            internals = path_internals(top)
            keys = [subordinate(w).key for w in internals]
            team = build_keys(keys, leaf_factory(tree.layer + 1))
            for w, leaf in zip(internals, iter_leaves(team), strict=True):
                w.down = leaf  # type: ignore[assignment]
                leaf.upp = w  # type: ignore[attr-defined]
            if team.size > 1:
                pending.append(team)  # type: ignore[arg-type]


def build_ltt_elements(
    elements: Sequence[Element], index: dict[int, LTTNode] | None = None
) -> LTT:
    keys = [(e.value, e.id) for e in elements]
    root: LTTNode = build_keys(keys, leaf_factory(0))  # type: ignore[assignment]
    attach_teams(root)
    idx = index if index is not None else {}
    for leaf in iter_leaves(root):
        idx[leaf.tiebreak] = leaf  # type: ignore[assignment]
    logger.debug(f"built LTT over {root.size} elements, height {root.height}")
    return LTT(root, idx)


def build_ltt(values: Sequence[int]) -> LTT:
    """Build an LTT over `values`, assigning fresh element ids."""
    return build_ltt_elements(make_elements(values))


# ---------------------------------------------------------------------------
# Layers
# ---------------------------------------------------------------------------


def iter_team_roots(root: LTTNode | None) -> Iterator[LTTNode]:
    """Every tree of the LTT (layer 0 first), each exactly once."""
    if root is None:
        return
    pending = [root]
    while pending:
        tree = pending.pop()
        yield tree
        for node in iter_nodes(tree):
            if node.is_leaf:
                continue
            parent = node.parent
            if parent is not None and parent.key == node.key:
                continue
            down = node.down  # type: ignore[attr-defined]
            if down is not None:
                pending.append(root_of(down))


def layer_number(ltt: LTT) -> int:
    """Deepest layer index holding a tree."""
    return max((t.layer for t in iter_team_roots(ltt.root)), default=0)


@dataclass
class LayerStats:
    layer: int
    trees: int = 0
    max_team_size: int = 0
    leaves: int = 0


def layer_profile(ltt: LTT, metrics: Metrics | None = None) -> dict[int, LayerStats]:
    """Per-layer tree counts and largest tree size; optionally recorded in metrics."""
    profile: dict[int, LayerStats] = {}
    for tree in iter_team_roots(ltt.root):
        stats = profile.setdefault(tree.layer, LayerStats(tree.layer))
        stats.trees += 1
        stats.leaves += tree.size
        stats.max_team_size = max(stats.max_team_size, tree.size)
    if metrics is not None:
        for layer, stats in profile.items():
            prior = metrics.team_size_max.get(layer, 0)
            metrics.team_size_max[layer] = max(prior, stats.max_team_size)
    return dict(sorted(profile.items()))


def iterated_log(base: float, n: float) -> int:
    """Smallest i >= 0 such that log_base applied i times to n is <= 1."""
    if base <= 1:
        raise BadBase(f"iterated log needs a base > 1, got {base}")
    i = 0
    x = float(n)
    while x > 1 + _BOUND_EPS:
        x = math.log(x) / math.log(base)
        i += 1
    return i


def layer_size_bound(n: int, layer: int) -> float:
    """log_phi applied `layer` times to n: the size ceiling of a layer's teams."""
    x = float(n)
    for _ in range(layer):
        if x <= 1:
            return 0.0
        x = math.log(x) / LOG_PHI
    return x


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


def _check_tree_links(tree: LTTNode, report: ValidationReport) -> None:
    for node in iter_nodes(tree):
        v: LTTNode = node  # type: ignore[assignment]
        if v.layer != tree.layer:
            report.add(v, "layer", f"node layer {v.layer} in a layer-{tree.layer} tree")
        if v.is_leaf:
            if v.down is not None:
                report.add(v, "down-link", "leaf has a down link")
            if tree.layer == 0 and v.upp is not None:
                report.add(v, "upp-link", "layer-0 leaf has an upp link")
            if tree.layer > 0 and (v.upp is None or v.upp.down is not v):
                report.add(v, "down-upp-inverse", "team leaf is not owned by its upp node")
            continue
        d = v.down
        if d is None:
            report.add(v, "down-link", "internal node without a team leaf")
            continue
        if not d.is_leaf or d.upp is not v:
            report.add(v, "down-upp-inverse", f"down {d!r} does not point back")
        if d.layer != v.layer + 1:
            report.add(v, "layer", f"down leaf at layer {d.layer}, expected {v.layer + 1}")
        sub = subordinate(v)
        if d.key != sub.key:
            report.add(v, "down-value", f"down key {d.key}, subordinate key {sub.key}")


def _check_team_order(tree: LTTNode, report: ValidationReport) -> None:
    for node in iter_nodes(tree):
        if node.is_leaf or (node.parent is not None and node.parent.key == node.key):
            continue
        internals = path_internals(node)
        downs = [w.down for w in internals]
        if any(d is None for d in downs):
            continue
        team = root_of(downs[0])  # type: ignore[arg-type]
        stored = list(iter_leaves(team))
        if len(stored) != len(downs) or any(a is not b for a, b in zip(stored, downs)):
            report.add(
                node,
                "team-order",
                f"team tree has {len(stored)} leaves, path has {len(downs)} internal nodes",
            )


def _check_size_chain(largest: dict[int, LTTNode], report: ValidationReport) -> None:
    """Each layer's largest team is at most log_phi of the layer above's largest tree."""
    for layer in sorted(largest):
        above = largest.get(layer - 1)
        if above is None:
            continue
        tree = largest[layer]
        ceiling = math.log(above.size) / LOG_PHI
        if tree.size > ceiling + _BOUND_EPS:
            report.add(
                tree,
                "team-size-chain",
                f"layer-{layer} team of {tree.size} exceeds log_phi({above.size}) = {ceiling:.3f}",
            )


def validate_ltt(ltt: LTT) -> ValidationReport:
    """Structural rules in every layer plus cross-layer links, team order and bounds."""
    report = ValidationReport()
    root = ltt.root
    if root is None:
        return report
    n = root.size
    deepest = 0
    largest: dict[int, LTTNode] = {}
    for tree in iter_team_roots(root):
        report.extend(validate_root(tree))
        _check_tree_links(tree, report)
        _check_team_order(tree, report)
        deepest = max(deepest, tree.layer)
        if tree.layer not in largest or tree.size > largest[tree.layer].size:
            largest[tree.layer] = tree
        if tree.layer > 0 and tree.size > layer_size_bound(n, tree.layer) + _BOUND_EPS:
            report.add(
                tree,
                "team-size-bound",
                f"layer-{tree.layer} team of {tree.size} exceeds "
                f"{layer_size_bound(n, tree.layer):.3f}",
            )
    _check_size_chain(largest, report)
    limit = iterated_log(PHI, n)
    if deepest > limit:
        report.add(root, "layer-bound", f"layer number {deepest} exceeds log*({n}) = {limit}")
    for leaf in iter_leaves(root):
        if ltt.index.get(leaf.tiebreak) is not leaf:
            report.add(leaf, "index", f"element {leaf.tiebreak} is not indexed to its leaf")
    return report
