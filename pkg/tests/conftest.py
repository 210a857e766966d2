"""Shared builders and independent oracles for the test suite.

The oracles here deliberately avoid the production code paths they check:
halfplane realizability goes through hull disjointness of complementary
subsets, membership through the LP route, and small partition existence
through direct enumeration.
"""

import itertools
import math
import random

import pytest

from colorislands import ColoredPointSet, hulls_disjoint, is_general_position
from colorislands import generators


def make_set(coords, colors, m=None, dim=2):
    return ColoredPointSet(dim, coords, colors, m=m)


def random_planar(seed, k, n, rng=None):
    """Random planar instance data for the k,n regime: sizes uniform over
    admissible splits with >= n per color."""
    rng = rng or random.Random(f"plane-{seed}-{k}-{n}")
    sizes = generators.random_sizes(rng, k * n, 2, n)
    return generators.random_general_position(rng, 2, sizes)


def random_balanced(seed, d, n, rng=None):
    rng = rng or random.Random(f"rd-{seed}-{d}-{n}")
    sizes = generators.random_sizes(rng, (d + 1) * n, d, n)
    return generators.random_general_position(rng, d, sizes)


def cluster_ring(seed, n_center, n_ring, rc=60, rr=10000):
    """Color-0 cluster near the origin, color-1 ring far out: the family
    where equitable line cuts do not exist and 3-cuttings are required."""
    rng = random.Random(seed)
    for _ in range(50):
        coords, cols = [], []
        for i in range(n_center):
            ang = 2 * math.pi * i / n_center + 0.3
            coords.append(
                (
                    round(rc * math.cos(ang)) + rng.randint(-5, 5),
                    round(rc * math.sin(ang)) + rng.randint(-5, 5),
                )
            )
            cols.append(0)
        for i in range(n_ring):
            ang = 2 * math.pi * i / n_ring + 0.05
            coords.append(
                (
                    round(rr * math.cos(ang)) + rng.randint(-60, 60),
                    round(rr * math.sin(ang)) + rng.randint(-60, 60),
                )
            )
            cols.append(1)
        if len(set(coords)) != len(coords):
            continue
        S = ColoredPointSet(2, coords, cols, m=2)
        if is_general_position(S):
            return S
    raise AssertionError("cluster_ring failed to reach general position")


def figure3_config():
    """11 ring points of color 0 around 8 color-1 points (4 mid-radius, 4
    near the center); satisfies the 3-cutting hypothesis for the targets
    a=(3,4,4), b=(2,3,3)."""
    sc = 1000
    coords, cols = [], []
    for i in range(1, 12):
        ang = 2 * math.pi * i / 11
        coords.append((round(2.75 * sc * math.cos(ang)), round(2.75 * sc * math.sin(ang))))
        cols.append(0)
    for frac, rad in ((7 / 22, 1.42), (11 / 22, 1.42), (16 / 22, 1.61), (21 / 22, 1.42)):
        ang = 2 * math.pi * frac
        coords.append((round(rad * sc * math.cos(ang)), round(rad * sc * math.sin(ang))))
        cols.append(1)
    for frac in (3 / 22, 9 / 22, 14 / 22, 20 / 22):
        ang = 2 * math.pi * frac
        coords.append((round(0.25 * sc * math.cos(ang)), round(0.25 * sc * math.sin(ang))))
        cols.append(1)
    S = ColoredPointSet(2, coords, cols, m=2)
    assert is_general_position(S)
    return S


# ---------------------------------------------------------------------------
# independent oracles


def realizable_halfplane_subsets(S, ids=None):
    """Every subset of ids that equals H & ids for some open halfplane H.

    A subset is realizable iff its hull is disjoint from the hull of its
    complement (strict separation exists for disjoint compact convex sets).
    Exponential; keep |ids| <= 14.
    """
    idl = sorted(ids if ids is not None else S.ids())
    n = len(idl)
    out = []
    for mask in range(1 << n):
        sub = frozenset(idl[i] for i in range(n) if mask >> i & 1)
        comp = frozenset(idl) - sub
        if not sub or not comp or hulls_disjoint(S, sub, comp):
            out.append(sub)
    return out


def halfplane_count_pairs(S, first_ids, ids=None):
    """Map: count of first_ids in H -> set of counts of the rest, over all
    realizable open halfplanes."""
    first = frozenset(first_ids)
    pairs = {}
    for sub in realizable_halfplane_subsets(S, ids):
        ca = len(sub & first)
        pairs.setdefault(ca, set()).add(len(sub) - ca)
    return pairs


def exhaustive_3partition_exists(S, a_ids, b_ids, avec, bvec):
    """Direct existence check for a 3-cutting by enumerating color-split
    combinations; |A|+|B| should stay small (<= 12)."""
    a_ids, b_ids = sorted(a_ids), sorted(b_ids)
    for a1 in itertools.combinations(a_ids, avec[0]):
        resta = [i for i in a_ids if i not in a1]
        for b1 in itertools.combinations(b_ids, bvec[0]):
            restb = [i for i in b_ids if i not in b1]
            c1 = frozenset(a1) | frozenset(b1)
            for a2 in itertools.combinations(resta, avec[1]):
                a3 = frozenset(resta) - frozenset(a2)
                for b2 in itertools.combinations(restb, bvec[1]):
                    b3 = frozenset(restb) - frozenset(b2)
                    c2 = frozenset(a2) | frozenset(b2)
                    c3 = a3 | b3
                    if (
                        hulls_disjoint(S, c1, c2)
                        and hulls_disjoint(S, c1, c3)
                        and hulls_disjoint(S, c2, c3)
                    ):
                        return True
    return False


@pytest.fixture(scope="session")
def rng_factory():
    return lambda tag: random.Random(tag)
