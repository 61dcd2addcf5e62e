"""Counter ceilings for the cost claims of each engine.

Every check returns a list of human-readable violations; an empty list means
the measured counters are within bounds.
"""

from __future__ import annotations

import math

from ..config import config
from ..metrics import Metrics
from ..trees.core_tt import PHI, height_bound
from ..trees.ltt_core import iterated_log


def tt_psort_insert_bound(n: int, k: int) -> int:
    return k * (math.ceil(height_bound(n)) + 1)


def tt_changeval_visit_bound(n: int) -> int:
    return math.ceil(height_bound(n)) + 1


def ltt_queue_bound(n: int, k: int) -> float:
    return config.ltt_queue_constant * max(1, iterated_log(PHI, n)) * k


# Below this size the fixed work of re-linking a few tiny team trees outweighs
# the log factors, so smaller lists are measured against this size.
STEP_FLOOR_N = 32


def _log2(n: int) -> float:
    return math.log2(max(n, STEP_FLOOR_N))


def _loglog_sq(n: int) -> float:
    return math.log2(_log2(n)) ** 2


def ltt_update_step_bound(n: int) -> float:
    return config.ltt_update_constant * _log2(n) * _loglog_sq(n)


def ltt_link_step_bound(n: int, height_diff: int) -> float:
    return config.ltt_update_constant * (height_diff + _log2(n)) * _loglog_sq(n)


def _ltt_psort_violations(m: Metrics, n: int, k: int) -> list[str]:
    """Per-call and per-team ceilings of the layered enumeration, plus the total.

    A team iterator serves at most k calls: one when seeded and one after each
    later pop on its path, the last of which refills the heap past the k-th
    output.
    """
    out: list[str] = []
    where = f"ltt psort n={n} k={k}"
    if m.queue_ops > ltt_queue_bound(n, k):
        out.append(f"{where}: {m.queue_ops} queue ops > {ltt_queue_bound(n, k):.0f}")
    if m.max_call_inserts > 2:
        out.append(f"{where}: {m.max_call_inserts} heap inserts in one call > 2")
    if m.max_call_deletes > 1:
        out.append(f"{where}: {m.max_call_deletes} heap deletes in one call > 1")
    if m.max_queue_size > 2 * k:
        out.append(f"{where}: heap held {m.max_queue_size} entries > {2 * k}")
    if m.max_team_calls > k:
        out.append(f"{where}: one team iterator served {m.max_team_calls} calls > {k}")
    return out


def check_op_bounds(
    engine: str,
    op: str,
    m: Metrics,
    n: int,
    k: int = 0,
    height: int = 0,
    height_diff: int = 0,
) -> list[str]:
    """Check one operation's counters. n is the list size the op worked on."""
    out: list[str] = []
    if n < 1:
        return out
    if engine == "tt":
        if op == "psort" and m.pq_inserts > tt_psort_insert_bound(n, k):
            out.append(
                f"tt psort n={n} k={k}: {m.pq_inserts} inserts > {tt_psort_insert_bound(n, k)}"
            )
        if op == "changeval" and m.nodes_visited > tt_changeval_visit_bound(n):
            out.append(
                f"tt changeval n={n}: {m.nodes_visited} visits > {tt_changeval_visit_bound(n)}"
            )
        if op == "link" and m.rotations > 1:
            out.append(f"tt link n={n}: {m.rotations} rebalancing steps > 1")
        if op == "cut" and m.telescoping_violations:
            out.append(f"tt cut n={n}: {m.telescoping_violations} detached subtrees too tall")
    elif engine == "ltt":
        if op == "psort":
            out.extend(_ltt_psort_violations(m, n, k))
        if op == "changeval":
            if m.expose_iterations > max(height, 0):
                out.append(
                    f"ltt changeval n={n}: {m.expose_iterations} expose iterations > height {height}"
                )
            if m.nodes_visited > ltt_update_step_bound(n):
                out.append(
                    f"ltt changeval n={n}: {m.nodes_visited} steps > {ltt_update_step_bound(n):.0f}"
                )
        if op == "cut" and m.nodes_visited > ltt_update_step_bound(n):
            out.append(
                f"ltt cut n={n}: {m.nodes_visited} steps > {ltt_update_step_bound(n):.0f}"
            )
        if op == "link" and m.nodes_visited > ltt_link_step_bound(n, height_diff):
            out.append(
                f"ltt link n={n}: {m.nodes_visited} steps > "
                f"{ltt_link_step_bound(n, height_diff):.0f}"
            )
    return out
