"""Updates on layered tournament trees keep every layer consistent."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dynamic_psort.errors import (
    NoParent,
    NotInternal,
    NotLeftChild,
    NotRightChild,
    SentinelValue,
    UnknownElement,
)
from dynamic_psort.metrics import Metrics
from dynamic_psort.trees.core_tt import LOG_PHI, MIN_SENTINEL, TTNode, iter_nodes, make_elements
from dynamic_psort.trees.ltt_core import (
    LTT,
    build_ltt,
    iter_team_roots,
    layer_number,
    layer_profile,
    team_of,
    validate_ltt,
)
from dynamic_psort.trees.ltt_query import psort_ltt
from dynamic_psort.trees.ltt_update import (
    LTTEngine,
    changeval_ltt,
    cut_ltt,
    expose,
    link_ltt,
    pd_closure_bruteforce,
    rotate_left_ltt,
    rotate_right_ltt,
)
from tests.strategies import distinct_lists

changes = st.lists(st.tuples(st.integers(min_value=0), st.integers(-20_000, 20_000)), max_size=15)


def _values(pairs: list[tuple[int, int]]) -> list[int]:
    return [v for _, v in pairs]


def _assert_consistent(ltt: LTT, values: list[int]) -> None:
    report = validate_ltt(ltt)
    assert report.ok, report.to_dict()
    assert ltt.values() == values
    assert _values(psort_ltt(ltt, max(1, len(values)))) == sorted(values)


def test_changeval_team_sample(team_values: list[int]) -> None:
    """Raising the minimum moves the root path to the next smallest element."""
    ltt = build_ltt(team_values)
    first = ltt.elements()[0]
    changeval_ltt(ltt, first, 11)
    assert ltt.root is not None and ltt.root.value == 4
    assert team_of(ltt, ltt.root) == [5, 6, 8]
    _assert_consistent(ltt, [11, 9, 5, 7, 8, 4, 6])


@given(distinct_lists, changes)
@settings(max_examples=60, deadline=None)
def test_changeval_sequence(values: list[int], edits: list[tuple[int, int]]) -> None:
    ltt = build_ltt(values)
    ids = ltt.elements()
    current = list(values)
    for pos, value in edits:
        i = pos % len(ids)
        m = Metrics()
        changeval_ltt(ltt, ids[i], value, m)
        current[i] = value
        assert m.expose_iterations <= ltt.height
    _assert_consistent(ltt, current)


def test_changeval_errors(tournament_values: list[int]) -> None:
    ltt = build_ltt(tournament_values)
    with pytest.raises(UnknownElement):
        changeval_ltt(ltt, -7, 1)
    with pytest.raises(SentinelValue):
        changeval_ltt(ltt, ltt.elements()[0], MIN_SENTINEL)


def test_changeval_bumps_version(tournament_values: list[int]) -> None:
    ltt = build_ltt(tournament_values)
    before = ltt.version
    changeval_ltt(ltt, ltt.elements()[2], 1)
    assert ltt.version == before + 1


def test_changed_nodes_stay_in_parent_down_closure(tournament_values: list[int]) -> None:
    """Only ancestors of the changed leaf, and their team leaves, change keys in layer 0."""
    ltt = build_ltt(tournament_values)
    target = ltt.find(ltt.elements()[5])
    nodes = [n for n in iter_nodes(ltt.root) if not n.is_leaf]
    before = {id(n): (n.key, n.down.key) for n in nodes}  # type: ignore[attr-defined]
    closure = pd_closure_bruteforce(ltt, target)
    changeval_ltt(ltt, target.tiebreak, 1)
    for n in nodes:
        key, down_key = before[id(n)]
        if n.key != key:
            assert n in closure
        if n.down.key != down_key:  # type: ignore[attr-defined]
            assert n in closure
    assert target.parent in closure and target.parent.down in closure  # type: ignore[union-attr]


def _hierarchy(node: TTNode | None) -> set[TTNode]:
    """Every node of the team tree holding `node` and of all teams below it."""
    if node is None:
        return set()
    top = node
    while top.parent is not None:
        top = top.parent
    return {w for tree in iter_team_roots(top) for w in iter_nodes(tree)}  # type: ignore[arg-type]


def _snapshot(ltt: LTT) -> dict[TTNode, tuple[object, object]]:
    return {
        w: (w.key, getattr(w.down, "key", None))  # type: ignore[attr-defined]
        for tree in iter_team_roots(ltt.root)
        for w in iter_nodes(tree)
    }


@given(distinct_lists, changes)
@settings(max_examples=60, deadline=None)
def test_changed_nodes_stay_within_touched_team_hierarchies(
    values: list[int], edits: list[tuple[int, int]]
) -> None:
    """In every layer a changeval only alters nodes it can reach from the exposed path.

    Layer 0 changes stay in the parent-down closure of the leaf. Lower layers
    also change inside the team trees of the path's children, because expose
    re-links those teams, so the reach there is the whole team hierarchy under
    any path node or path child.
    """
    ltt = build_ltt(values)
    ids = ltt.elements()
    for pos, value in edits:
        target = ltt.find(ids[pos % len(ids)])
        closure = pd_closure_bruteforce(ltt, target)
        reach: set[TTNode] = set(closure.nodes)
        ancestors = [w for w in closure.nodes if w.layer == 0 and not w.is_leaf]  # type: ignore[attr-defined]
        for w in ancestors:
            for v in (w, w.left, w.right):
                if v is not None and not v.is_leaf:
                    reach |= _hierarchy(v.down)  # type: ignore[attr-defined]
        before = _snapshot(ltt)
        changeval_ltt(ltt, target.tiebreak, value)
        for w, (key, down_key) in before.items():
            if w.key != key or getattr(w.down, "key", None) != down_key:  # type: ignore[attr-defined]
                assert w in reach, f"{w!r} changed outside the touched hierarchies"
                if w.layer == 0:  # type: ignore[attr-defined]
                    assert w in closure
    assert validate_ltt(ltt).ok


def test_expose_on_consistent_tree_changes_nothing(team_values: list[int]) -> None:
    ltt = build_ltt(team_values)
    assert ltt.root is not None and ltt.root.left is not None
    expose(ltt, ltt.root.left)
    _assert_consistent(ltt, team_values)
    assert ltt.version == 1


def test_expose_rejects_leaf(tournament_values: list[int]) -> None:
    ltt = build_ltt(tournament_values)
    with pytest.raises(NotInternal):
        expose(ltt, next(ltt.leaves()))


def _rotatable(ltt: LTT) -> TTNode:
    assert ltt.root is not None and ltt.root.right is not None
    return ltt.root.right


@given(st.lists(st.integers(-500, 500), min_size=4, max_size=40, unique=True))
@settings(max_examples=40, deadline=None)
def test_rotation_keeps_layers_consistent(values: list[int]) -> None:
    """A lone rotation may unbalance layer 0 but every link and key stays right."""
    ltt = build_ltt(values)
    u = _rotatable(ltt)
    rotate_left_ltt(u, ltt=ltt)  # type: ignore[arg-type]
    assert ltt.root is u
    report = validate_ltt(ltt)
    assert report.rules() <= {
        "balance",
        "height-bound",
        "team-size-bound",
        "team-size-chain",
        "layer-bound",
    }
    assert ltt.values() == values
    assert _values(psort_ltt(ltt, len(values))) == sorted(values)

    former = u.left
    assert former is not None
    rotate_right_ltt(former, ltt=ltt)  # type: ignore[arg-type]
    assert ltt.root is former
    _assert_consistent(ltt, values)


def test_rotation_errors(tournament_values: list[int]) -> None:
    ltt = build_ltt(tournament_values)
    root = ltt.root
    assert root is not None and root.left is not None and root.right is not None
    with pytest.raises(NoParent):
        rotate_left_ltt(root)
    with pytest.raises(NotRightChild):
        rotate_left_ltt(root.left)  # type: ignore[arg-type]
    with pytest.raises(NotLeftChild):
        rotate_right_ltt(root.right)  # type: ignore[arg-type]


@given(distinct_lists, distinct_lists)
@settings(max_examples=50, deadline=None)
def test_link(a: list[int], b: list[int]) -> None:
    l1, l2 = build_ltt(a), build_ltt(b)
    ids = l1.elements() + l2.elements()
    joined = link_ltt(l1, l2)
    assert joined.elements() == ids
    assert l1.root is None and l2.root is None
    assert l1.version == 1 and l2.version == 1
    _assert_consistent(joined, a + b)
    assert all(joined.find(e).tiebreak == e for e in ids)


@given(distinct_lists, st.integers(min_value=0))
@settings(max_examples=50, deadline=None)
def test_cut(values: list[int], pos: int) -> None:
    ltt = build_ltt(values)
    ids = ltt.elements()
    i = pos % len(values)
    head, tail = cut_ltt(ltt, ids[i])
    assert head.elements() == ids[: i + 1]
    assert tail.elements() == ids[i + 1 :]
    _assert_consistent(head, values[: i + 1])
    if i + 1 < len(values):
        _assert_consistent(tail, values[i + 1 :])
    else:
        assert tail.is_empty()
    outside = tail if i + 1 == len(values) else head
    with pytest.raises(UnknownElement):
        outside.find(ids[0] if outside is tail else ids[-1])


@given(distinct_lists, st.integers(min_value=0), changes)
@settings(max_examples=40, deadline=None)
def test_cut_link_changeval_interleaved(
    values: list[int], pos: int, edits: list[tuple[int, int]]
) -> None:
    ltt = build_ltt(values)
    ids = ltt.elements()
    head, tail = cut_ltt(ltt, ids[pos % len(ids)])
    current = dict(zip(ids, values, strict=True))
    for p, value in edits:
        e = ids[p % len(ids)]
        side = head if e in head.elements() else tail
        changeval_ltt(side, e, value)
        current[e] = value
    joined = link_ltt(tail, head)
    order = joined.elements()
    assert sorted(order) == sorted(ids)
    _assert_consistent(joined, [current[e] for e in order])


def test_layer_number_stays_within_bound_after_updates(team_values: list[int]) -> None:
    ltt = build_ltt(team_values)
    for e in ltt.elements():
        changeval_ltt(ltt, e, -e)
    assert layer_number(ltt) <= 6
    assert validate_ltt(ltt).ok


def test_engine_round(tournament_values: list[int]) -> None:
    engine = LTTEngine()
    elements = make_elements(tournament_values)
    engine.new("L", elements)
    assert _values(engine.psort("L", 3)) == [2, 3, 4]
    engine.cut("L", elements[3].id, "H", "T")
    assert engine.values("H") == [3, 6, 9, 2]
    assert engine.size("T") == 3
    engine.changeval("H", elements[0].id, 0)
    engine.link("H", "T", "L")
    assert engine.sequence("L") == [e.id for e in elements]
    assert _values(engine.psort("L", 2)) == [0, 2]
    assert engine.structure("L").leaf_count == 7
    assert engine.validate().ok
    with pytest.raises(UnknownElement):
        engine.cut("L", -1, "A", "B")


updates = st.lists(
    st.tuples(
        st.sampled_from(["changeval", "cut", "swap"]),
        st.integers(min_value=0),
        st.integers(-20_000, 20_000),
    ),
    max_size=12,
)


def _assert_size_chain(ltt: LTT) -> None:
    sizes = [s.max_team_size for s in layer_profile(ltt).values()]
    for upper, lower in zip(sizes, sizes[1:]):
        assert lower <= math.log(upper) / LOG_PHI + 1e-9
    assert "team-size-chain" not in validate_ltt(ltt).rules()


@given(st.lists(st.integers(-20_000, 20_000), min_size=1, max_size=200), updates)
@settings(max_examples=50, deadline=None)
def test_team_sizes_shrink_by_log_phi_after_updates(
    values: list[int], ops: list[tuple[str, int, int]]
) -> None:
    """Each layer's largest team stays within log_phi of the layer above, update after update."""
    ltt = build_ltt(values)
    _assert_size_chain(ltt)
    for kind, pos, value in ops:
        ids = ltt.elements()
        e = ids[pos % len(ids)]
        if kind == "changeval":
            changeval_ltt(ltt, e, value)
        else:
            head, tail = cut_ltt(ltt, e)
            _assert_size_chain(head)
            if not tail.is_empty():
                _assert_size_chain(tail)
            ltt = link_ltt(tail, head) if kind == "swap" else link_ltt(head, tail)
        _assert_size_chain(ltt)
        assert validate_ltt(ltt).ok


def test_size_chain_rule_flags_an_oversized_team() -> None:
    values = list(range(1, 9))
    ltt = build_ltt(values)
    # Two left rotations at the root stretch the left spine, which carries the minimum.
    for _ in range(2):
        assert ltt.root is not None and ltt.root.right is not None
        assert not ltt.root.right.is_leaf
        rotate_left_ltt(ltt.root.right, ltt=ltt)  # type: ignore[arg-type]
    assert ltt.values() == values
    assert layer_profile(ltt)[1].max_team_size == 5
    assert 5 > math.log(8) / LOG_PHI
    assert "team-size-chain" in validate_ltt(ltt).rules()
