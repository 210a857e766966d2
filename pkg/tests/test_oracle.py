"""Brute-force enumeration, partition search, and the conjecture scan."""

import itertools
import random

import pytest

from colorislands import (
    BudgetExceededError,
    SearchBudget,
    brute_force_partition,
    conjecture_scan,
    enumerate_islands,
    is_island,
    verify_island_partition,
)
from colorislands import generators
from colorislands.oracle import validate_partition

from conftest import make_set, random_planar


def test_enumerate_whole_set():
    S = random_planar(1, 3, 2)
    islands = enumerate_islands(S, len(S), 2)
    assert islands == [frozenset(S.ids())]


def test_enumerate_convex_quadrilateral_pairs():
    S = make_set([(0, 0), (10, 1), (11, 9), (1, 10)], [0, 1, 0, 1])
    islands = enumerate_islands(S, 2, 1)
    assert len(islands) == 6  # all pairs: no segment covers a third point


def test_enumerate_triangle_with_interior():
    S = make_set([(0, 0), (6, 0), (3, 5), (3, 2)], [0, 0, 0, 1])
    islands = enumerate_islands(S, 3, 1)
    assert sorted(sorted(i) for i in islands) == [[0, 1, 3], [0, 2, 3], [1, 2, 3]]


def test_enumerate_agrees_with_is_island_and_monotone_in_j():
    S = random_planar(8, 3, 3)
    last = None
    for j in (1, 2):
        islands = enumerate_islands(S, 3, j)
        assert len(set(islands)) == len(islands)
        for isl in islands:
            assert is_island(isl, S)
            assert len({S.color[i] for i in isl}) >= j
        if last is not None:
            assert len(islands) <= last
        last = len(islands)


def test_enumeration_budget():
    S = random_planar(3, 3, 3)
    with pytest.raises(BudgetExceededError):
        enumerate_islands(S, 3, 1, SearchBudget(max_points=5))


def test_brute_force_trivial_n1():
    S = random_planar(5, 4, 1)
    res = brute_force_partition(S, 4, 2, 1)
    assert res.status == "found"
    assert res.partition.parts == (frozenset(S.ids()),)


def test_brute_force_finds_on_valid_instance():
    S = random_planar(13, 3, 4)
    res = brute_force_partition(S, 3, 2, 4)
    assert res.status == "found"
    assert verify_island_partition(res.partition, S, 3, 2).passed
    assert validate_partition(S, res.partition, 3, 2)


def test_brute_force_none_exists_single_color():
    S = generators.random_general_position(4, 2, (6, 0))
    res = brute_force_partition(S, 3, 2, 2)
    assert res.status == "none_exists"
    rev = brute_force_partition(S, 3, 2, 2, order="reverse")
    assert rev.status == "none_exists"


def test_brute_force_none_exists_order_independent():
    # crafted unsolvable geometry: k=2, j=2 on nested colors where every
    # red-blue segment covers another point forces none_exists agreement
    checked = 0
    for seed in range(30):
        S = random_planar(seed + 600, 2, 3)
        res = brute_force_partition(S, 2, 2, 3)
        rev = brute_force_partition(S, 2, 2, 3, order="reverse")
        assert res.status == rev.status
        checked += 1
        if res.status == "none_exists":
            break
    assert checked


def test_brute_force_budget_exceeded_distinct():
    S = random_planar(13, 3, 4)
    res = brute_force_partition(S, 3, 2, 4, budget=SearchBudget(node_limit=1))
    assert res.status == "budget_exceeded"
    assert res.partition is None


def test_validate_partition_rejects_bad():
    S = random_planar(13, 3, 4)
    res = brute_force_partition(S, 3, 2, 4)
    parts = [sorted(p) for p in res.partition.parts]
    parts[0][0], parts[1][0] = parts[1][0], parts[0][0]  # swap two points
    from colorislands import IslandPartition

    bad = IslandPartition.of(parts)
    ok = validate_partition(S, bad, 3, 2)
    good = verify_island_partition(bad, S, 3, 2).passed
    assert ok == good  # both routes agree on the mutant


def test_conjecture_scan_valid_regimes():
    for seed in range(4):
        S = random_planar(seed + 40, 3, 4)
        rep = conjecture_scan(S, 3, 2, 2, 4)
        assert rep.hall_feasible and rep.found
        assert rep.counterexample_dump is None


def test_conjecture_scan_infeasible_profile():
    S = generators.random_general_position(4, 2, (6, 0))
    rep = conjecture_scan(S, 3, 2, 2, 2)
    assert not rep.hall_feasible
    assert rep.status == "not_searched"


def test_conjecture_scan_exploratory_regimes():
    # outside the proven regimes the scan records outcomes without claims:
    # d=3 with k=m=4 (the smallest case where single-hyperplane rounding can
    # fail) and planar convex-position sets
    S = generators.random_general_position(11, 3, (2, 2, 2, 2))
    rep = conjecture_scan(S, 4, 4, 3, 2)
    assert rep.status in ("found", "none_exists", "budget_exceeded", "not_searched")
    C = generators.convex_position(5, 2, (4, 4))
    rep2 = conjecture_scan(C, 4, 2, 2, 2)
    assert rep2.hall_feasible
    assert rep2.status in ("found", "none_exists", "budget_exceeded")
