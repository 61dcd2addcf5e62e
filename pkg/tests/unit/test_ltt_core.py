"""Layered tournament tree construction, teams, layers and validation."""

import pytest
from hypothesis import given, settings

from dynamic_psort.errors import BadBase, PathTooShort, UnknownElement
from dynamic_psort.metrics import Metrics
from dynamic_psort.trees.core_tt import PHI, TTNode, iter_leaves, iter_nodes, make_elements, subordinate
from dynamic_psort.trees.ltt_core import (
    LTT,
    LTTNode,
    build_ltt,
    build_ltt_elements,
    iter_team_roots,
    iterated_log,
    layer_number,
    layer_profile,
    layer_size_bound,
    team_of,
    team_root,
    validate_ltt,
)
from tests.strategies import distinct_lists


@pytest.fixture
def team_ltt(team_values: list[int]) -> LTT:
    return build_ltt(team_values)


def _leaf_values(root: TTNode) -> list[int]:
    return [leaf.value for leaf in iter_leaves(root)]


def test_team_sample_teams(team_ltt: LTT) -> None:
    """The three principal paths with internal nodes carry teams [4,5,9], [7], [6,8]."""
    root = team_ltt.root
    assert root is not None and root.left is not None and root.right is not None
    assert root.value == 3
    assert team_of(team_ltt, root) == [4, 5, 9]
    assert team_of(team_ltt, root.right) == [6, 8]
    assert team_of(team_ltt, root.left.right) == [7]
    assert team_of(team_ltt, root.left) == [4, 5, 9]


def test_team_sample_team_trees(team_ltt: LTT) -> None:
    root = team_ltt.root
    assert root is not None
    team = team_root(root)
    assert team is not None and team.layer == 1
    assert _leaf_values(team) == [4, 5, 9]
    second = team_root(team)
    assert second is not None and second.layer == 2
    assert _leaf_values(second) == [9, 5]
    third = team_root(second)
    assert third is not None and third.layer == 3
    assert _leaf_values(third) == [9]
    assert layer_number(team_ltt) == 3


def test_team_sample_layer_profile(team_ltt: LTT) -> None:
    m = Metrics()
    profile = layer_profile(team_ltt, m)
    assert sorted(profile) == [0, 1, 2, 3]
    assert [profile[i].trees for i in range(4)] == [1, 3, 2, 1]
    assert [profile[i].max_team_size for i in range(4)] == [7, 3, 2, 1]
    assert profile[1].leaves == 6
    assert m.team_size_max == {0: 7, 1: 3, 2: 2, 3: 1}


def test_down_links_hold_subordinate_keys(team_ltt: LTT) -> None:
    for tree in iter_team_roots(team_ltt.root):
        for node in iter_nodes(tree):
            if node.is_leaf:
                continue
            assert node.down is not None
            assert node.down.key == subordinate(node).key
            assert node.down.upp is node
            assert node.down.layer == node.layer + 1


def test_team_of_leaf_path_is_too_short(team_ltt: LTT) -> None:
    leaf9 = list(team_ltt.leaves())[1]
    assert leaf9.value == 9
    with pytest.raises(PathTooShort):
        team_of(team_ltt, leaf9)


def test_singleton_list() -> None:
    ltt = build_ltt([5])
    assert layer_number(ltt) == 0
    assert ltt.height == 0
    assert validate_ltt(ltt).ok


def test_find(team_ltt: LTT) -> None:
    leaf = list(team_ltt.leaves())[4]
    assert team_ltt.find(leaf.tiebreak) is leaf
    with pytest.raises(UnknownElement):
        team_ltt.find(-1)
    other = build_ltt([1, 2])
    with pytest.raises(UnknownElement):
        team_ltt.find(next(other.leaves()).tiebreak)


def test_shared_index_scopes_membership() -> None:
    index: dict[int, LTTNode] = {}
    a = build_ltt_elements(make_elements([1, 2, 3]), index)
    b = build_ltt_elements(make_elements([4, 5]), index)
    assert len(index) == 5
    elem_b = b.elements()[0]
    assert b.find(elem_b).value == 4
    with pytest.raises(UnknownElement):
        a.find(elem_b)


@given(distinct_lists)
@settings(max_examples=60, deadline=None)
def test_built_ltts_validate(values: list[int]) -> None:
    ltt = build_ltt(values)
    report = validate_ltt(ltt)
    assert report.ok, report.to_dict()
    assert ltt.values() == values
    assert layer_number(ltt) <= iterated_log(PHI, len(values))


@given(distinct_lists)
@settings(max_examples=40, deadline=None)
def test_every_layer_partitions_the_one_above(values: list[int]) -> None:
    """Team leaves of layer i+1 are the internal nodes of layer i."""
    profile = layer_profile(build_ltt(values))
    for layer in sorted(profile)[1:]:
        above = profile[layer - 1]
        internal_above = above.leaves - above.trees
        assert profile[layer].leaves == internal_above


def test_iterated_log() -> None:
    assert iterated_log(PHI, 1) == 0
    assert iterated_log(PHI, PHI) == 1
    assert iterated_log(PHI, 2) == 2
    assert iterated_log(PHI, 7) == 6
    assert iterated_log(PHI, 100) == 7
    assert iterated_log(PHI, 10**6) == 8
    assert iterated_log(2, 2**16) == 4
    with pytest.raises(BadBase):
        iterated_log(1, 10)


def test_layer_size_bound() -> None:
    assert layer_size_bound(1000, 0) == 1000
    assert layer_size_bound(1000, 1) == pytest.approx(14.355, abs=1e-2)
    assert layer_size_bound(1, 3) == 0.0


def test_validation_reports_broken_down_key(team_ltt: LTT) -> None:
    root = team_ltt.root
    assert root is not None and root.down is not None
    root.down.value = 100
    assert "down-value" in validate_ltt(team_ltt).rules()


def test_validation_reports_stale_index(team_ltt: LTT) -> None:
    first = next(team_ltt.leaves())
    del team_ltt.index[first.tiebreak]
    assert "index" in validate_ltt(team_ltt).rules()
