"""Partition of a d-colored balanced set in R^d into n disjoint d-colorful
simplices via a special discrete sandwich cut.

The cut search replaces the continuous bisection-and-rounding argument by
an exact finite search: every hyperplane avoiding the point set can be
moved to pass through d of its points without changing any other point's
side, so hyperplanes spanned by d-subsets together with all 2^d side
assignments for the spanning points represent every cut that can exist.
The first candidate in deterministic order whose two realized sides are
balanced, nonempty and of size divisible by d+1 is returned.

round_cut_reference keeps the constructive path alive as a reference: it
starts from a color-transversal bisecting hyperplane and applies the
even/odd rounding case analysis, so the two routes can be compared.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from .errors import CapacityError, InternalInvariantError, PreconditionError
from .geometry import (
    ColoredPointSet,
    IslandPartition,
    OrientedCut,
    cut_through,
    halfspace_counts,
    require_general_position,
)

MAX_SEARCH_DIM = 4  # build-time cap for the O(n^d * 2^d) cut search


@dataclass(frozen=True)
class BalancedInstance:
    """A d-colored set of (d+1)*n points in R^d, balanced: every color class
    holds at least n = |X|/(d+1) points."""

    S: ColoredPointSet
    n: int

    def __post_init__(self):
        S, n = self.S, self.n
        d = S.dim
        if S.m != d:
            raise PreconditionError(f"need exactly m = d = {d} color classes, got {S.m}")
        if n < 1:
            raise PreconditionError("n must be >= 1")
        if len(S) != (d + 1) * n:
            raise PreconditionError(f"|X|={len(S)} != (d+1)n={(d + 1) * n}")
        for c, size in enumerate(S.sizes()):
            if size * (d + 1) < len(S):
                raise PreconditionError(
                    f"color class {c} has {size} < n={n} points; not balanced"
                )
        require_general_position(S)

    @property
    def d(self):
        return self.S.dim

    def dump(self):
        return json.dumps(
            {
                "dim": self.S.dim,
                "n": self.n,
                "points": [
                    {"x": [str(v) for v in self.S.coords(i)], "color": self.S.color[i]}
                    for i in self.S.ids()
                ],
            }
        )


def is_balanced(s_ids, inst):
    """Every color holds at least a 1/(d+1) fraction of the chosen points
    (exact rational comparison)."""
    s_ids = list(s_ids)
    d = inst.d
    total = len(s_ids)
    counts = [0] * inst.S.m
    for i in s_ids:
        counts[inst.S.color[i]] += 1
    return all(c * (d + 1) >= total for c in counts)


@dataclass(frozen=True)
class SpecialCut:
    """A cut whose realized open halfspaces are balanced and hold positive
    multiples of d+1 points each."""

    cut: OrientedCut
    side_sums: tuple  # (above_total, below_total), assignment applied
    per_color: tuple  # (above, below) per color, assignment applied

    def validate(self, d):
        above, below = self.side_sums
        if above <= 0 or below <= 0:
            raise InternalInvariantError("special cut has an empty side")
        if above % (d + 1) or below % (d + 1):
            raise InternalInvariantError("special cut side sums not multiples of d+1")
        for c, (ca, cb) in enumerate(self.per_color):
            if ca * (d + 1) < above or cb * (d + 1) < below:
                raise InternalInvariantError(
                    f"special cut side not balanced in color {c}"
                )
        return self


def _classify(S, ids, spanning, normal, offset):
    """Strict sides of the non-spanning ids w.r.t. an integer hyperplane."""
    pts = S.int_coords()
    above, below = [], []
    for i in ids:
        if i in spanning:
            continue
        v = sum(n * c for n, c in zip(normal, pts[i])) - offset
        if v > 0:
            above.append(i)
        elif v < 0:
            below.append(i)
        else:
            raise InternalInvariantError(
                f"point {i} lies on a spanned hyperplane of a general-position set"
            )
    return above, below


def _int_normal(pts, spanning):
    d = len(pts[spanning[0]])
    base = pts[spanning[0]]
    rows = [[pts[s][j] - base[j] for j in range(d)] for s in spanning[1:]]
    normal = []
    for j in range(d):
        minor = [[row[c] for c in range(d) if c != j] for row in rows]
        det = _idet(minor)
        normal.append(det if j % 2 == 0 else -det)
    if all(v == 0 for v in normal):
        return None
    offset = sum(n * c for n, c in zip(normal, base))
    return normal, offset


def _idet(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if n == 3:
        a, b, c = m[0]
        d, e, f = m[1]
        g, h, i = m[2]
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    det = 0
    for j in range(n):
        minor = [[m[r][c] for c in range(n) if c != j] for r in range(1, n)]
        term = m[0][j] * _idet(minor)
        det += term if j % 2 == 0 else -term
    return det


def _special_cut_sides(S, ids):
    """Search the canonical cut family; returns (SpecialCut, above_ids,
    below_ids) for the first feasible candidate in deterministic order."""
    d = S.dim
    idl = sorted(ids)
    pts = S.int_coords()
    total = len(idl)
    for spanning in itertools.combinations(idl, d):
        res = _int_normal(pts, spanning)
        if res is None:
            raise InternalInvariantError("affinely dependent spanning set")
        normal, offset = res
        lowest_off = next(i for i in idl if i not in spanning)
        v = sum(n * c for n, c in zip(normal, pts[lowest_off])) - offset
        if v < 0:
            normal = [-x for x in normal]
            offset = -offset
        above, below = _classify(S, idl, set(spanning), normal, offset)
        strict_above = [0] * S.m
        strict_below = [0] * S.m
        for i in above:
            strict_above[S.color[i]] += 1
        for i in below:
            strict_below[S.color[i]] += 1
        span_colors = [S.color[i] for i in spanning]
        for ass in range(1 << d):
            above_c = list(strict_above)
            below_c = list(strict_below)
            for bit in range(d):
                if ass >> bit & 1:
                    above_c[span_colors[bit]] += 1
                else:
                    below_c[span_colors[bit]] += 1
            above_total = sum(above_c)
            below_total = total - above_total
            if above_total == 0 or below_total == 0:
                continue
            if above_total % (d + 1) or below_total % (d + 1):
                continue
            if any(c * (d + 1) < above_total for c in above_c):
                continue
            if any(c * (d + 1) < below_total for c in below_c):
                continue
            assignment = {
                spanning[bit]: (+1 if ass >> bit & 1 else -1) for bit in range(d)
            }
            cut = cut_through(S, spanning, assignment, orient_above=lowest_off)
            special = SpecialCut(
                cut,
                (above_total, below_total),
                tuple(zip(above_c, below_c)),
            ).validate(d)
            above_ids = frozenset(above) | {
                spanning[bit] for bit in range(d) if ass >> bit & 1
            }
            below_ids = frozenset(idl) - above_ids
            return special, above_ids, below_ids
    return None


def special_cut(inst):
    """The first canonical cut, in deterministic order, whose sides are
    balanced and hold positive multiples of d+1 points."""
    if inst.d > MAX_SEARCH_DIM:
        raise CapacityError(
            f"cut search capped at dimension {MAX_SEARCH_DIM}, got d={inst.d}"
        )
    if inst.n < 2:
        raise PreconditionError("special_cut needs n >= 2")
    res = _special_cut_sides(inst.S, inst.S.ids())
    if res is None:
        raise InternalInvariantError(
            "special cut search exhausted; instance dump: " + inst.dump()
        )
    return res[0]


def partition_rd(inst, cut_log=None):
    """n pairwise disjoint d-colorful (d+1)-point simplices spanning the
    instance.  Leaves of the cut recursion are the parts."""
    if inst.d > MAX_SEARCH_DIM:
        raise CapacityError(
            f"cut search capped at dimension {MAX_SEARCH_DIM}, got d={inst.d}"
        )
    S = inst.S
    d = inst.d

    def rec(ids, n_sub):
        if n_sub == 1:
            counts = [0] * S.m
            for i in ids:
                counts[S.color[i]] += 1
            if any(c < 1 for c in counts):
                raise InternalInvariantError("leaf part misses a color")
            return [frozenset(ids)]
        res = _special_cut_sides(S, ids)
        if res is None:
            raise InternalInvariantError(
                "special cut search exhausted; instance dump: " + inst.dump()
            )
        special, above_ids, below_ids = res
        if cut_log is not None:
            cut_log.append(
                {
                    "type": "sandwich-cut",
                    "spanning": list(special.cut.spanning_ids),
                    "above": sorted(
                        i for i, s in special.cut.side_assignment if s > 0
                    ),
                    "side_sums": list(special.side_sums),
                }
            )
        n_above = len(above_ids) // (d + 1)
        n_below = len(below_ids) // (d + 1)
        return rec(above_ids, n_above) + rec(below_ids, n_below)

    return IslandPartition.of(rec(frozenset(S.ids()), inst.n))


# ---------------------------------------------------------------------------
# reference rounding path


def find_bisecting_cut(inst):
    """Search color transversals for a hyperplane through one point of each
    class whose strict sides bisect every class: equal halves for odd
    classes, sizes {h-1, h} for even classes of size 2h.  Returns None when
    no such transversal cut exists (the reference path is then unavailable).
    """
    if inst.d > MAX_SEARCH_DIM:
        raise CapacityError(
            f"cut search capped at dimension {MAX_SEARCH_DIM}, got d={inst.d}"
        )
    S = inst.S
    d = inst.d
    pts = S.int_coords()
    sizes = S.sizes()
    for trans in itertools.product(*(S.class_ids(c) for c in range(d))):
        spanning = tuple(sorted(trans))
        res = _int_normal(pts, spanning)
        if res is None:
            continue
        normal, offset = res
        above, below = _classify(S, S.ids(), set(spanning), normal, offset)
        ok = True
        for c in range(d):
            ac = sum(1 for i in above if S.color[i] == c)
            bc = sum(1 for i in below if S.color[i] == c)
            if sizes[c] % 2 == 1:
                if ac != sizes[c] // 2 or bc != sizes[c] // 2:
                    ok = False
                    break
            else:
                if {ac, bc} != {sizes[c] // 2, sizes[c] // 2 - 1}:
                    ok = False
                    break
        if ok:
            return cut_through(
                S, spanning, {i: -1 for i in spanning}
            )
    return None


def round_cut_reference(h_prime, inst):
    """Round a bisecting transversal cut into a SpecialCut.

    n even: every class keeps its bisection; the points on the hyperplane
    whose classes have odd size are split half and half, giving |X|/2 a
    side.  n odd: all odd-class points on the hyperplane move below, plus
    (d+1-c)/2 of the even-class points tangent above, giving (n'+1)(d+1)
    points below and n'(d+1) above.
    """
    S = inst.S
    d = inst.d
    sizes = S.sizes()
    spanning = h_prime.spanning_ids
    if len(spanning) != d or len({S.color[i] for i in spanning}) != d:
        raise PreconditionError(
            "h_prime lacks the bisection structure: spanning points must be a"
            " color transversal"
        )
    counts = halfspace_counts(h_prime, S)
    tangent_side = {}  # color -> +1/-1 for even classes (their deficient side)
    for c in range(d):
        ac, on, bc = counts.per_color[c]
        if on != 1:
            raise PreconditionError("h_prime lacks the bisection structure")
        if sizes[c] % 2 == 1:
            if ac != sizes[c] // 2 or bc != sizes[c] // 2:
                raise PreconditionError("h_prime does not bisect an odd class")
        else:
            if {ac, bc} != {sizes[c] // 2, sizes[c] // 2 - 1}:
                raise PreconditionError("h_prime does not bisect an even class")
            tangent_side[c] = +1 if ac < bc else -1
    point_of = {S.color[i]: i for i in spanning}
    odd_points = sorted(point_of[c] for c in range(d) if sizes[c] % 2 == 1)
    c_on = len(odd_points)

    if inst.n % 2 == 0:
        assignment = {}
        for c, side in tangent_side.items():
            assignment[point_of[c]] = side
        half = c_on // 2
        if c_on % 2:
            raise InternalInvariantError("odd number of odd classes in the even case")
        for idx, pid in enumerate(odd_points):
            assignment[pid] = +1 if idx < half else -1
        rounded = OrientedCut(
            h_prime.dim,
            h_prime.spanning_ids,
            h_prime.normal,
            h_prime.offset,
            tuple(sorted(assignment.items())),
        )
    else:
        above_tangent = sorted(
            point_of[c] for c, side in tangent_side.items() if side > 0
        )
        below_tangent = sorted(
            point_of[c] for c, side in tangent_side.items() if side < 0
        )
        work = h_prime
        if len(above_tangent) < len(below_tangent):
            # flip the orientation so the larger tangent group sits above
            work = h_prime.flipped()
            tangent_side = {c: -s for c, s in tangent_side.items()}
            above_tangent, below_tangent = below_tangent, above_tangent
        a_cnt, b_cnt = len(above_tangent), len(below_tangent)
        if a_cnt + b_cnt + c_on != d or (a_cnt + b_cnt) % 2 == 0:
            raise InternalInvariantError("tangent bookkeeping is inconsistent")
        move = (d + 1 - c_on) // 2
        if move > a_cnt:
            raise InternalInvariantError("not enough tangent points above to move")
        assignment = {pid: -1 for pid in odd_points}
        for pid in below_tangent:
            assignment[pid] = -1
        for idx, pid in enumerate(above_tangent):
            assignment[pid] = -1 if idx < move else +1
        rounded = OrientedCut(
            work.dim,
            work.spanning_ids,
            work.normal,
            work.offset,
            tuple(sorted(assignment.items())),
        )

    real = halfspace_counts(rounded, S)
    per_color = real.realized
    above_total, below_total = real.realized_totals()
    special = SpecialCut(
        rounded, (above_total, below_total), per_color
    ).validate(d)
    if inst.n % 2 == 0:
        if above_total != below_total:
            raise InternalInvariantError("even case must split the set in half")
    else:
        n_low = inst.n // 2
        if sorted((above_total, below_total)) != [
            n_low * (d + 1),
            (n_low + 1) * (d + 1),
        ]:
            raise InternalInvariantError("odd case side sums are wrong")
        # bookkeeping from the rounding argument: minimal classes land on
        # each side with n', n'+1 or n'+2 points
        below_is_big = below_total > above_total
        for c in range(d):
            ca, cb = per_color[c]
            big, small = (cb, ca) if below_is_big else (ca, cb)
            if small < n_low or big < n_low + 1:
                raise InternalInvariantError("rounded cut lost balance")
            if sizes[c] <= 2 * n_low + 2 and not (
                small in (n_low, n_low + 1) and big in (n_low + 1, n_low + 2)
            ):
                raise InternalInvariantError("minimal class bookkeeping violated")
    return special
