"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with `pytest -s tests/test_acceptance.py -v` to see the lines as they
complete.  Exact arithmetic everywhere means zero numeric tolerance: every
assertion is an equality or an exact inequality.
"""

import itertools
import random
import time

import pytest

import colorislands.sandwich as sandwich_mod
from colorislands import (
    BalancedInstance,
    ColorProfile,
    InternalInvariantError,
    MergeNotGuaranteedError,
    PlanarInstance,
    check_hall,
    colorful_tuple_partition,
    conjecture_scan,
    merge_colors,
    partition_plane,
    partition_rd,
    sigma_scan,
    tightness_family,
    verify_island_partition,
)
from colorislands import generators, render
from colorislands.hall import partition_exists_flow
from colorislands.oracle import validate_partition

from conftest import (
    cluster_ring,
    halfplane_count_pairs,
    random_balanced,
    random_planar,
)

PLANE_KS = range(2, 7)
PLANE_NS = range(1, 7)
PLANE_SEEDS = 30
RD_SEEDS = 20

_internal_errors = []


def _line(num, text):
    print(f"ACCEPTANCE {num} PASS: {text}")


@pytest.fixture(scope="module")
def plane_matrix():
    out = []
    for k in PLANE_KS:
        for n in PLANE_NS:
            for seed in range(PLANE_SEEDS):
                S = random_planar(seed, k, n)
                inst = PlanarInstance(S, k, n)
                try:
                    partition = partition_plane(inst)
                except InternalInvariantError as exc:
                    _internal_errors.append((k, n, seed, str(exc)))
                    raise
                out.append((k, n, seed, S, partition))
    return out


@pytest.fixture(scope="module")
def rd_matrix():
    collected = []
    orig = sandwich_mod._special_cut_sides

    def spy(S, ids):
        res = orig(S, ids)
        if res is not None:
            collected.append((S, frozenset(ids), res[0]))
        return res

    out = []
    sandwich_mod._special_cut_sides = spy
    try:
        for d in (2, 3):
            for n in range(1, 5):
                for seed in range(RD_SEEDS):
                    S = random_balanced(f"{d}-{n}-{seed}", d, n)
                    inst = BalancedInstance(S, n)
                    try:
                        partition = partition_rd(inst)
                    except InternalInvariantError as exc:
                        _internal_errors.append((d, n, seed, str(exc)))
                        raise
                    out.append((d, n, seed, S, partition))
    finally:
        sandwich_mod._special_cut_sides = orig
    return out, collected


def test_criterion_1_planar_theorem_suite(plane_matrix):
    start = time.time()
    for k, n, seed, S, partition in plane_matrix:
        report = verify_island_partition(partition, S, k, 2)
        assert report.passed, (k, n, seed, report.summary())
        assert len(partition.parts) == n
        a = len(S.class_ids(0)) // n
        s = len(S.class_ids(0)) % n
        acounts = [sum(1 for i in p if S.color[i] == 0) for p in partition.parts]
        assert set(acounts) <= {a, a + 1}, (k, n, seed)
        assert acounts.count(a + 1) == s, (k, n, seed)
    elapsed = time.time() - start
    _line(
        1,
        f"{len(plane_matrix)} planar instances (k=2..6, n=1..6, 30 seeds) "
        f"verified with near-equipartition; checks took {elapsed:.1f}s",
    )


def test_criterion_2_rings_figure():
    start = time.time()
    S = generators.rings(0)
    assert len(S) == 50 and S.sizes() == (17, 33)
    partition = partition_plane(PlanarInstance(S, 5, 10))
    report = verify_island_partition(partition, S, 5, 2)
    assert report.passed and len(partition.parts) == 10
    svg = render.render_svg(S, partition)
    assert svg.count("<polygon") == 10
    elapsed = time.time() - start
    assert elapsed < 10, f"rings pipeline took {elapsed:.1f}s (limit 10s)"
    _line(2, f"50-point ring instance solved to 10 shaded hulls in {elapsed:.1f}s")


def test_criterion_3_rd_theorem_suite(rd_matrix):
    matrix, _ = rd_matrix
    for d, n, seed, S, partition in matrix:
        report = verify_island_partition(partition, S, d + 1, d)
        assert report.passed, (d, n, seed, report.summary())
        assert len(partition.parts) == n
    _line(3, f"{len(matrix)} balanced R^d instances (d=2,3; n=1..4) verified")


def test_criterion_4_special_cut_contract(rd_matrix):
    _, cuts = rd_matrix
    assert cuts, "suite 3 must have exercised the cut search"
    for S, ids, special in cuts:
        d = S.dim
        above, below = special.side_sums
        assert above > 0 and below > 0
        assert above % (d + 1) == 0 and below % (d + 1) == 0
        # recompute the realized sides independently of the search
        counts = [[0, 0] for _ in range(S.m)]
        for i in ids:
            side = special.cut.realized_side(i, S)
            counts[S.color[i]][0 if side > 0 else 1] += 1
        assert sum(c[0] for c in counts) == above
        assert sum(c[1] for c in counts) == below
        for c in range(S.m):
            assert counts[c][0] * (d + 1) >= above
            assert counts[c][1] * (d + 1) >= below
    # deterministic-order minimality on fresh planar instances
    from test_sandwich import _enumerate_feasible_cuts
    from colorislands import special_cut

    for seed in range(50):
        n = 2 + seed % 3
        S = random_balanced(f"det-{seed}", 2, n)
        inst = BalancedInstance(S, n)
        sc = special_cut(inst)
        spanning, assignment = next(_enumerate_feasible_cuts(S, n))
        assert sc.cut.spanning_ids == tuple(spanning)
        assert sc.cut.assignment == assignment
    _line(
        4,
        f"{len(cuts)} special cuts balanced with side sums divisible by d+1; "
        "50 d=2 instances matched the full-enumeration minimum",
    )


def test_criterion_5_hall_oracle_equivalence():
    start = time.time()
    cache = {}
    profiles = 0
    feasible_validated = 0
    for d in (2, 3):
        for k in range(d, 17):
            for n in range(1, 17):
                total = k * n
                if total > 16:
                    continue
                for m in range(d, 6):
                    for bars in itertools.combinations(range(total + m - 1), m - 1):
                        sizes = []
                        prev = -1
                        for b in list(bars) + [total + m - 1]:
                            sizes.append(b - prev - 1)
                            prev = b
                        profile = ColorProfile(tuple(sizes), k, n, d)
                        key = (d, k, n, tuple(sorted(sizes)))
                        if key not in cache:
                            oracle_says = partition_exists_flow(profile)
                            cache[key] = oracle_says
                            if oracle_says:
                                tuples = colorful_tuple_partition(profile)
                                assert len(tuples) == n
                                assert all(
                                    len(t) == k
                                    and len({c for c, _ in t}) >= d
                                    for t in tuples
                                )
                                feasible_validated += 1
                        assert check_hall(profile).feasible == cache[key], profile
                        profiles += 1
    elapsed = time.time() - start
    assert elapsed < 120, f"criterion 5 took {elapsed:.1f}s (limit 120s)"
    _line(
        5,
        f"{profiles} profiles (kn<=16, d<=3, m<=5) agree with the matching "
        f"oracle; {feasible_validated} feasible classes built tuples; {elapsed:.1f}s",
    )


def test_criterion_6_merge_suite():
    rng = random.Random(606)
    done = 0
    while done < 500:
        d = rng.randint(2, 4)
        k = rng.randint(d + 1, d + 5)
        m = rng.randint(2 * d - 1, 2 * d + 3)
        n = rng.randint(1, 8)
        cuts = sorted(rng.randint(0, k * n) for _ in range(m - 1))
        sizes = []
        prev = 0
        for c in cuts + [k * n]:
            sizes.append(c - prev)
            prev = c
        profile = ColorProfile(tuple(sizes), k, n, d)
        if not check_hall(profile).feasible:
            continue
        _, merged = merge_colors(profile)
        assert check_hall(merged).feasible
        done += 1

    # first tightness family: equal classes, k = d; merging any two makes a
    # class of 2dn/(2d-1) > n
    fam1 = tightness_family(3, "k_equals_d", 5)
    assert fam1.sizes == (3, 3, 3, 3, 3) and fam1.k == 3
    assert check_hall(fam1).feasible
    with pytest.raises(MergeNotGuaranteedError):
        merge_colors(fam1)
    merged1 = ColorProfile((6, 3, 3, 3), 3, 5, 3)
    assert 6 == 2 * 3 * 5 // 5 and 6 > fam1.n
    assert not check_hall(merged1).feasible

    # second family: merging the two smallest overflows (k-d+2)n
    fam2 = tightness_family(3, "k_greater_d", 3, k=4)
    assert fam2.sizes == (6, 2, 2, 2)
    assert check_hall(fam2).feasible
    with pytest.raises(MergeNotGuaranteedError):
        merge_colors(fam2)
    merged2 = ColorProfile((6, 4, 2), 4, 3, 3)
    assert 6 + 4 > (4 - 3 + 2) * 3
    assert not check_hall(merged2).feasible
    _line(6, "500 admissible merges stayed feasible; both tightness families "
             "refused and demonstrably infeasible after merging")


def test_criterion_7_sigma_structure():
    confirmed = 0
    obs2_checked = 0

    # At 14 points or fewer every sigma entry turns out to be equitable: a
    # halfplane holding a shielded cluster point always sees about half of
    # the far ring, and pushing the thresholds out of that window needs a
    # ring of 14+ points by itself.  The small batch therefore checks the
    # equitable entries against the subset oracle, and six 15-point shielded
    # instances (the smallest with sign entries) make the single-sign
    # confirmation non-vacuous.
    def cases():
        for seed in range(20):
            yield cluster_ring(seed + 50, 3, 11, rc=8, rr=50000), 7, 2, True
        for seed in range(200):
            k, n = [(3, 4), (4, 3), (3, 3), (5, 2), (4, 2), (6, 2)][seed % 6]
            yield random_planar(seed + 700, k, n), k, n, True
        for seed in range(6):
            yield cluster_ring(seed + 80, 4, 11, rc=8, rr=50000), 5, 3, False

    ran = 0
    for S, k, n, counts_toward_50 in cases():
        if counts_toward_50 and ran >= 50:
            continue
        if counts_toward_50 and len(S) > 14:
            continue
        inst = PlanarInstance(S, k, n)
        if inst.divisible:
            continue
        if counts_toward_50:
            ran += 1
        a, b, s, t = inst.derived()
        table = sigma_scan(inst)
        pairs = halfplane_count_pairs(S, frozenset(S.class_ids(0)))
        for i in range(1, t + 1):
            entry = table.sigma_a[i]
            counts = pairs[i * a]
            if entry.kind == "sign":
                assert all(c < i * (b + 1) for c in counts) or all(
                    c > i * (b + 1) for c in counts
                ), (i, sorted(counts))
                assert entry.sign == (-1 if max(counts) < i * (b + 1) else +1)
                confirmed += 1
            else:
                assert i * (b + 1) in counts
        for j in range(1, s + 1):
            entry = table.sigma_a1[j]
            counts = pairs[j * (a + 1)]
            if entry.kind == "sign":
                assert all(c < j * b for c in counts) or all(
                    c > j * b for c in counts
                )
                confirmed += 1
            else:
                assert j * b in counts
        e1, e2 = table.sigma_a.get(1), table.sigma_a1.get(1)
        if e1 and e2 and e1.kind == "sign" and e2.kind == "sign":
            assert e1.sign == e2.sign
            obs2_checked += 1
    assert ran >= 50
    assert confirmed > 0 and obs2_checked > 0
    _line(
        7,
        f"{ran} instances <= 14 points: {confirmed} sign entries confirmed "
        f"single-signed; level-1 equality held on {obs2_checked} instances",
    )


def test_criterion_8_oracle_cross_check(plane_matrix, rd_matrix):
    rd_list, _ = rd_matrix
    validated = scanned = 0
    for k, n, seed, S, partition in plane_matrix:
        if len(S) > 14:
            continue
        assert validate_partition(S, partition, k, 2), (k, n, seed)
        validated += 1
        if seed < 10:
            rep = conjecture_scan(S, k, 2, 2, n)
            assert rep.hall_feasible and rep.found, (k, n, seed)
            assert rep.counterexample_dump is None
            scanned += 1
    for d, n, seed, S, partition in rd_list:
        if len(S) > 14:
            continue
        assert validate_partition(S, partition, d + 1, d), (d, n, seed)
        validated += 1
        if seed < 10:
            rep = conjecture_scan(S, d + 1, d, d, n)
            assert rep.hall_feasible and rep.found, (d, n, seed)
            assert rep.counterexample_dump is None
            scanned += 1
    assert validated > 200 and scanned > 100
    _line(
        8,
        f"{validated} solver outputs <= 14 points pass brute-force "
        f"validation; {scanned} conjecture scans found partitions, 0 dumps",
    )


def test_criterion_9_internal_invariant_sentinel(plane_matrix, rd_matrix):
    # the executable form of the existence proofs: the unreachable branches
    # (sign-table contradiction, exhausted cut searches) never fire across
    # the whole matrix, including the adversarial cluster+ring family that
    # forces the 3-cutting path
    assert _internal_errors == []
    for seed in (1, 2):
        S = cluster_ring(seed, 4, 17)
        partition = partition_plane(PlanarInstance(S, 7, 3))
        assert verify_island_partition(partition, S, 7, 2).passed
    _line(
        9,
        f"no internal invariant failure across {len(plane_matrix)} planar + "
        f"{len(rd_matrix[0])} spatial solves and the 3-cutting stress family",
    )
