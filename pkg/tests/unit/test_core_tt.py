"""Tournament-tree construction, navigation, rotations and validation."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dynamic_psort.errors import (
    EmptyInput,
    NoParent,
    NotInternal,
    NotLeftChild,
    NotRightChild,
    SentinelValue,
)
from dynamic_psort.trees.core_tt import (
    MAX_VALUE,
    MIN_SENTINEL,
    build,
    continuation,
    fib_min_leaves,
    height_bound,
    iter_leaves,
    iter_nodes,
    make_elements,
    next_leaf,
    path_nodes,
    prev_leaf,
    principal_path_origin,
    rotate_left,
    rotate_right,
    subordinate,
    superordinate,
    validate,
    within_height_bound,
)
from tests.strategies import distinct_lists


def test_build_sample_list(tournament_values: list[int]) -> None:
    """The root holds the list minimum and leaves keep list order."""
    t = build(tournament_values)
    assert t.root is not None
    assert t.root.value == 2
    assert t.leaf_count == 7
    assert t.height == 3
    assert t.values() == tournament_values
    assert validate(t).ok


def test_build_single_element() -> None:
    t = build([42])
    assert t.root is not None and t.root.is_leaf
    assert t.height == 0
    assert validate(t).ok


def test_build_rejects_empty_and_sentinel() -> None:
    with pytest.raises(EmptyInput):
        build([])
    with pytest.raises(SentinelValue):
        make_elements([1, MIN_SENTINEL])
    with pytest.raises(ValueError):
        make_elements([MAX_VALUE + 1])


def test_element_ids_are_fresh_and_ordered() -> None:
    a = make_elements([5, 5])
    b = make_elements([5])
    assert a[0].id < a[1].id < b[0].id


def test_equal_values_break_ties_by_element_id() -> None:
    """Repeated values keep distinct keys; the earlier element wins."""
    t = build([7, 7, 7])
    leaves = list(t.leaves())
    assert t.root is not None
    assert t.root.tiebreak == leaves[0].tiebreak
    assert validate(t).ok


@given(distinct_lists)
@settings(max_examples=60, deadline=None)
def test_built_trees_validate(values: list[int]) -> None:
    t = build(values)
    report = validate(t)
    assert report.ok, report.to_dict()
    assert t.values() == values
    assert within_height_bound(t.height, len(values))


def test_fib_min_leaves() -> None:
    assert [fib_min_leaves(h) for h in range(7)] == [1, 2, 3, 5, 8, 13, 21]


def test_height_bound() -> None:
    assert height_bound(1) == 0.0
    assert height_bound(2) == pytest.approx(1.4404, abs=1e-3)
    assert within_height_bound(3, 5)
    assert not within_height_bound(3, 4)


def test_principal_paths(tournament_values: list[int]) -> None:
    """The root path ends at the minimum; subordinates hang off it."""
    t = build(tournament_values)
    assert t.root is not None
    path = path_nodes(t.root)
    assert [w.value for w in path] == [2] * len(path)
    assert path[-1].is_leaf
    assert principal_path_origin(t.root) is path[-1]
    assert superordinate(t.root) is None
    assert subordinate(t.root).value == 4
    assert continuation(path[-1]) is None
    with pytest.raises(NotInternal):
        subordinate(path[-1])


def test_superordinate_of_subordinate_path(tournament_values: list[int]) -> None:
    t = build(tournament_values)
    assert t.root is not None
    sub = subordinate(t.root)
    assert superordinate(sub) is t.root


def test_leaf_neighbours(tournament_values: list[int]) -> None:
    t = build(tournament_values)
    leaves = list(t.leaves())
    for a, b in zip(leaves, leaves[1:], strict=False):
        assert next_leaf(a) is b
        assert prev_leaf(b) is a
    assert prev_leaf(leaves[0]) is None
    assert next_leaf(leaves[-1]) is None


def test_rotation_errors(tournament_values: list[int]) -> None:
    t = build(tournament_values)
    root = t.root
    assert root is not None and root.left is not None and root.right is not None
    with pytest.raises(NoParent):
        rotate_left(root)
    with pytest.raises(NotRightChild):
        rotate_left(root.left)
    with pytest.raises(NotLeftChild):
        rotate_right(root.right)


@given(st.lists(st.integers(-500, 500), min_size=4, max_size=40, unique=True))
@settings(max_examples=40, deadline=None)
def test_rotation_then_inverse_restores_tree(values: list[int]) -> None:
    """Keys follow the rotation; rotating back gives a valid tree again."""
    t = build(values)
    assert t.root is not None
    u = t.root.right
    assert u is not None and not u.is_leaf
    rotate_left(u)
    assert u.parent is None
    assert [leaf.value for leaf in iter_leaves(u)] == values
    assert u.value == min(values)
    former = u.left
    assert former is not None
    rotate_right(former)
    t.root = former
    assert validate(t).ok
    assert t.values() == values


def test_validation_reports_corruption(tournament_values: list[int]) -> None:
    t = build(tournament_values)
    assert t.root is not None
    t.root.value = 99
    assert "min-of-children" in validate(t).rules()

    t = build(tournament_values)
    inner = next(n for n in iter_nodes(t.root) if not n.is_leaf and n is not t.root)
    inner.height += 3
    assert "height" in validate(t).rules()
