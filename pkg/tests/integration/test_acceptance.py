"""Acceptance-scale runs. Deselected by default; run with `pytest -m slow`."""

import math
import random

import pytest

from dynamic_psort.harness.bench import bench, random_values
from dynamic_psort.harness.bounds import check_op_bounds
from dynamic_psort.harness.fuzz import fuzz
from dynamic_psort.metrics import COUNTER_FIELDS, Metrics
from dynamic_psort.models import BenchRow
from dynamic_psort.trees.core_tt import LOG_PHI, PHI, TTNode, build, fib_min_leaves, height_bound
from dynamic_psort.trees.ltt_core import (
    build_ltt,
    iterated_log,
    layer_number,
    layer_profile,
    validate_ltt,
)
from dynamic_psort.trees.ltt_query import candidate_set_bruteforce, make_iterator
from dynamic_psort.trees.ltt_update import cut_ltt, link_ltt
from dynamic_psort.trees.tt_dynamic import cut_tt, link_tt

pytestmark = pytest.mark.slow


@pytest.mark.parametrize("seed", range(1, 11))
@pytest.mark.parametrize("pair", [("tt", "oracle"), ("ltt", "oracle")])
def test_differential_fuzz(seed: int, pair: tuple[str, str]) -> None:
    report = fuzz(seed=seed, op_count=10_000, max_size=512, pair=pair)
    assert report.status == "success", report.model_dump_json()
    assert report.mismatches == 0
    assert report.bound_violations == []


def _assert_height_bound(n: int, height: int) -> None:
    assert height <= height_bound(n) + 1e-9
    assert n >= fib_min_leaves(height)


def test_height_bound_over_random_builds() -> None:
    """1000 random builds, sizes log-uniform so the total stays near a few hundred thousand leaves."""
    rng = random.Random(20)
    for _ in range(1000):
        n = max(1, round(2 ** rng.uniform(0, 11)))
        t = build(random_values(rng, n))
        _assert_height_bound(n, t.height)
        assert t.height == math.ceil(math.log2(n))


@pytest.mark.parametrize("n", [2**12 + 1, 3 * 2**12, 2**15 - 1, 2**16 + 1, 99_999, 100_000])
def test_height_bound_on_large_builds(n: int) -> None:
    t = build(random_values(random.Random(n), n))
    _assert_height_bound(n, t.height)
    assert t.height == math.ceil(math.log2(n))


def test_height_bound_over_random_sizes_to_100k() -> None:
    """Build shape depends on n alone, as the builds above confirm, so heights follow from n."""
    rng = random.Random(21)
    for _ in range(1000):
        n = rng.randint(1, 100_000)
        _assert_height_bound(n, math.ceil(math.log2(n)))


def test_layer_bound_at_one_million() -> None:
    rng = random.Random(6)
    values = list(range(1, 1_000_001))
    rng.shuffle(values)
    ltt = build_ltt(values)
    assert layer_number(ltt) <= 6
    assert layer_number(ltt) <= iterated_log(PHI, len(values))
    sizes = [s.max_team_size for s in layer_profile(ltt).values()]
    for upper, lower in zip(sizes, sizes[1:]):
        assert lower <= math.log(upper) / LOG_PHI + 1e-9


def test_queue_matches_candidates_on_random_lists() -> None:
    rng = random.Random(5)
    for _ in range(500):
        values = random_values(rng, rng.randint(1, 64))
        ltt = build_ltt(values)
        assert ltt.root is not None
        it = make_iterator(ltt.root, ltt)
        outputs: list[TTNode] = []
        while (leaf := it.advance()) is not None:
            outputs.append(leaf)
            assert it.candidates() == candidate_set_bruteforce(ltt.root, outputs)


def _violations(row: BenchRow) -> list[str]:
    m = Metrics(**{name: getattr(row, name) for name in COUNTER_FIELDS})
    return check_op_bounds(
        row.engine, row.op, m, n=row.n, k=row.k, height=math.ceil(height_bound(row.n))
    )


@pytest.mark.parametrize("engine", ["tt", "ltt"])
def test_counter_bounds_on_bench_grid(engine: str) -> None:
    rows = bench([2**10, 2**14, 2**18], [1, 16, 256], engine=engine, seed=3)
    measured = [row for row in rows if row.op in ("psort", "changeval")]
    assert measured
    found = [v for row in measured for v in _violations(row)]
    assert found == []


def test_cut_then_link_is_identity() -> None:
    rng = random.Random(7)
    for _ in range(1000):
        values = random_values(rng, rng.randint(1, 200))
        cut_at = rng.randrange(len(values))

        t = build(values)
        order = [leaf.tiebreak for leaf in t.leaves()]
        leaf = list(t.leaves())[cut_at]
        head, tail = cut_tt(t, leaf)
        joined = link_tt(head, tail)
        assert [leaf.tiebreak for leaf in joined.leaves()] == order

        ltt = build_ltt(values)
        ids = ltt.elements()
        head_l, tail_l = cut_ltt(ltt, ids[cut_at])
        joined_l = link_ltt(head_l, tail_l)
        assert joined_l.elements() == ids
        assert validate_ltt(joined_l).ok
