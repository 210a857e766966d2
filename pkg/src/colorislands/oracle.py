"""Independent brute-force ground truth.

Exhaustive island enumeration and a backtracking partition search, used to
validate the constructive solvers on small instances and to explore the
conjectured general statement.  Hull membership and disjointness go through
the LP route only, keeping this module decoupled from the planar fast
paths.  "Budget exceeded" is a first-class outcome: a nonexistence claim is
made only when the search ran to completion.
"""

from __future__ import annotations

import itertools
import json
import os
from dataclasses import dataclass

from . import exactlp
from .errors import BudgetExceededError, PreconditionError
from .hall import ColorProfile, check_hall
from .geometry import IslandPartition

DEFAULT_NODE_LIMIT = 2_000_000


@dataclass(frozen=True)
class SearchBudget:
    max_points: int = 20
    max_parts: int = 10
    node_limit: int = DEFAULT_NODE_LIMIT

    def __post_init__(self):
        if self.max_points <= 0 or self.max_parts <= 0 or self.node_limit <= 0:
            raise PreconditionError("budget fields must be positive")

    @staticmethod
    def default():
        """Default budget; ISLANDS_NODE_LIMIT overrides the node limit."""
        env = os.environ.get("ISLANDS_NODE_LIMIT")
        limit = int(env) if env else DEFAULT_NODE_LIMIT
        return SearchBudget(node_limit=limit)


def _hull_contains(S, ids, x):
    return exactlp.point_in_hull(x, [S.coords(i) for i in ids])


def _disjoint(S, ids_a, ids_b):
    return not exactlp.hulls_intersect(
        [S.coords(i) for i in ids_a], [S.coords(i) for i in ids_b]
    )


def enumerate_islands(S, k, j, budget=None):
    """All j-colorful k-islands of S, by direct enumeration of k-subsets."""
    budget = budget or SearchBudget.default()
    if len(S) > budget.max_points:
        raise BudgetExceededError(
            f"{len(S)} points exceed the enumeration budget of {budget.max_points}"
        )
    ids = sorted(S.ids())
    out = []
    nodes = 0
    for sub in itertools.combinations(ids, k):
        nodes += 1
        if nodes > budget.node_limit:
            raise BudgetExceededError("island enumeration hit the node limit")
        if len({S.color[i] for i in sub}) < j:
            continue
        subset = frozenset(sub)
        rest = [i for i in ids if i not in subset]
        if any(_hull_contains(S, sub, S.coords(r)) for r in rest):
            continue
        out.append(subset)
    return out


@dataclass(frozen=True)
class BruteForceResult:
    status: str  # "found" | "none_exists" | "budget_exceeded"
    partition: IslandPartition = None
    nodes: int = 0


def brute_force_partition(S, k, j, n, budget=None, order="forward"):
    """Exact search for a partition into n pairwise hull-disjoint j-colorful
    k-sets.

    Backtracks over the islands of S (in a disjoint-hull partition every
    part is automatically an island), always extending at an extremal
    uncovered id; order='reverse' explores candidates in the mirrored order
    as an independence check for nonexistence claims.
    """
    budget = budget or SearchBudget.default()
    if k * n != len(S):
        raise PreconditionError(f"k*n={k * n} != |S|={len(S)}")
    if n > budget.max_parts:
        raise BudgetExceededError(f"{n} parts exceed the budget of {budget.max_parts}")
    try:
        islands = enumerate_islands(S, k, j, budget)
    except BudgetExceededError:
        return BruteForceResult("budget_exceeded")
    if order == "reverse":
        islands = list(reversed(islands))
    by_point = {i: [] for i in S.ids()}
    for idx, isl in enumerate(islands):
        for i in isl:
            by_point[i].append(idx)
    disjoint_memo = {}

    def disjoint(ia, ib):
        key = (ia, ib) if ia < ib else (ib, ia)
        val = disjoint_memo.get(key)
        if val is None:
            val = _disjoint(S, islands[key[0]], islands[key[1]])
            disjoint_memo[key] = val
        return val

    nodes = 0
    chosen = []
    exceeded = False

    def rec(uncovered):
        nonlocal nodes, exceeded
        if not uncovered:
            return True
        anchor = min(uncovered) if order != "reverse" else max(uncovered)
        for idx in by_point[anchor]:
            isl = islands[idx]
            if not isl <= uncovered:
                continue
            nodes += 1
            if nodes > budget.node_limit:
                exceeded = True
                return False
            if all(disjoint(idx, prev) for prev in chosen):
                chosen.append(idx)
                if rec(uncovered - isl):
                    return True
                chosen.pop()
            if exceeded:
                return False
        return False

    found = rec(frozenset(S.ids()))
    if found:
        return BruteForceResult(
            "found", IslandPartition.of(islands[i] for i in chosen), nodes
        )
    if exceeded:
        return BruteForceResult("budget_exceeded", None, nodes)
    return BruteForceResult("none_exists", None, nodes)


def validate_partition(S, partition, k, j):
    """Oracle-side validation of a claimed partition, using only the LP
    membership route, so solver outputs are checked by an independent
    mechanism."""
    parts = [frozenset(p) for p in partition.parts]
    covered = set()
    for part in parts:
        if len(part) != k or part & covered:
            return False
        if len({S.color[i] for i in part}) < j:
            return False
        covered |= part
    if covered != set(S.ids()):
        return False
    for pa, pb in itertools.combinations(parts, 2):
        if not _disjoint(S, pa, pb):
            return False
    for part in parts:
        outside = covered - part
        if any(_hull_contains(S, part, S.coords(o)) for o in outside):
            return False
    return True


@dataclass(frozen=True)
class ConjectureReport:
    hall_feasible: bool
    status: str
    found: bool
    nodes: int
    counterexample_dump: str = None


def conjecture_scan(S, k, m, d, n, budget=None):
    """Pair the Hall feasibility check with the brute-force search.  A
    feasible profile without any island partition would contradict the
    conjectured general statement; such instances are dumped verbatim."""
    budget = budget or SearchBudget.default()
    profile = ColorProfile(S.sizes(), k, n, d)
    feasible = check_hall(profile).feasible
    result = (
        brute_force_partition(S, k, d, n, budget)
        if feasible
        else BruteForceResult("not_searched")
    )
    dump = None
    if feasible and result.status == "none_exists":
        dump = json.dumps(
            {
                "dim": S.dim,
                "colors": S.m,
                "k": k,
                "n": n,
                "d": d,
                "points": [
                    {"x": [str(v) for v in S.coords(i)], "color": S.color[i]}
                    for i in S.ids()
                ],
            }
        )
    return ConjectureReport(
        feasible,
        result.status,
        result.status == "found",
        result.nodes or 0,
        dump,
    )
