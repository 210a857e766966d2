"""Partition of a 2-colored planar point set into n disjoint 2-colorful
k-islands.

The driver recurses through three constructions: equitable halfplane splits
found by a sign scan over all combinatorially distinct open halfplanes,
an exact equipartition for the divisible case, and a 3-cutting search
(two-line splits, then 3-fans around canonical apexes, then a bounded
exhaustive fallback).  All counting is exact on denominator-cleared integer
coordinates.

Halfplane catalogue: every realizable trace of an open halfplane on a
finite set is realized by a line through two of its points together with
inclusion flags for the two boundary points (translate the boundary until
it hits a point, then rotate about it until it hits a second; membership of
the open side never changes along the way).  That makes sign scans over
"every open halfplane with exactly x points of A" finite and exact.
"""

from __future__ import annotations

import itertools
import logging
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from math import gcd

from .errors import (
    HypothesisViolatedError,
    InternalInvariantError,
    PreconditionError,
)
from .geometry import (
    ColoredPointSet,
    Hull,
    IslandPartition,
    OrientedCut,
    hulls_disjoint,
    require_general_position,
)

log = logging.getLogger(__name__)

_FALLBACK_NODE_LIMIT = 2_000_000


@dataclass(frozen=True)
class PlanarInstance:
    """A 2-colored planar set of k*n points with at least n per color.

    Color 0 plays A, color 1 plays B.  When the class sizes are not
    divisible by n the derived parameters satisfy |A| = n*a + s,
    |B| = n*b + t, k = a + b + 1, s + t = n with a, b, s, t >= 1.
    """

    S: ColoredPointSet
    k: int
    n: int

    def __post_init__(self):
        S, k, n = self.S, self.k, self.n
        if S.dim != 2 or S.m != 2:
            raise PreconditionError("planar instances need dim=2 and exactly 2 colors")
        if k < 2 or n < 1:
            raise PreconditionError("need k >= 2 and n >= 1")
        if len(S) != k * n:
            raise PreconditionError(f"|X|={len(S)} != k*n={k * n}")
        sizes = S.sizes()
        for c, size in enumerate(sizes):
            if size < n:
                raise PreconditionError(
                    f"color class {c} has {size} < n={n} points"
                )
        require_general_position(S)

    @property
    def a_ids(self):
        return self.S.class_ids(0)

    @property
    def b_ids(self):
        return self.S.class_ids(1)

    def derived(self):
        """(a, b, s, t) for the non-divisible case."""
        na, nb = len(self.a_ids), len(self.b_ids)
        s, t = na % self.n, nb % self.n
        if s == 0 and t == 0:
            raise PreconditionError("divisible case has no (a, b, s, t) split")
        a, b = na // self.n, nb // self.n
        if s + t != self.n or a < 1 or b < 1 or self.k != a + b + 1:
            raise InternalInvariantError("derived parameters are inconsistent")
        return a, b, s, t

    @property
    def divisible(self):
        return len(self.a_ids) % self.n == 0 and len(self.b_ids) % self.n == 0


# ---------------------------------------------------------------------------
# halfplane catalogue


class _Halfplanes:
    """Catalogue of all open-halfplane traces on a subset of a planar set.

    Candidates are keyed (p, q, side, fp, fq): the line through points p < q,
    side 0 = left of p->q / 1 = right, and inclusion flags for the two
    boundary points.  Candidate order is the lexicographic key order, which
    every deterministic tie-break below inherits.
    """

    def __init__(self, S, ids, first_ids):
        self.S = S
        self.ids = tuple(sorted(ids))
        self.first = frozenset(first_ids)
        pts = S.int_coords()
        self._pts = pts
        cands = []
        in_first = {i: (i in self.first) for i in self.ids}
        idl = self.ids
        for ai in range(len(idl)):
            p = idl[ai]
            px, py = pts[p]
            for bi in range(ai + 1, len(idl)):
                q = idl[bi]
                qx, qy = pts[q]
                ux, uy = qx - px, qy - py
                lA = lB = rA = rB = 0
                for r in idl:
                    if r == p or r == q:
                        continue
                    cr = ux * (pts[r][1] - py) - uy * (pts[r][0] - px)
                    if cr > 0:
                        if in_first[r]:
                            lA += 1
                        else:
                            lB += 1
                    elif cr < 0:
                        if in_first[r]:
                            rA += 1
                        else:
                            rB += 1
                    else:
                        raise InternalInvariantError(
                            f"collinear triple ({p},{q},{r}) in a general-position set"
                        )
                pa, qa = in_first[p], in_first[q]
                for side, (bA, bB) in enumerate(((lA, lB), (rA, rB))):
                    for fp in (0, 1):
                        for fq in (0, 1):
                            cA = bA + (fp if pa else 0) + (fq if qa else 0)
                            cB = bB + (fp if not pa else 0) + (fq if not qa else 0)
                            cands.append((cA, cB, (p, q, side, fp, fq)))
        self.candidates = cands
        by_first = {}
        for cA, cB, key in cands:
            by_first.setdefault(cA, []).append((cB, key))
        self.by_first = by_first

    def exact(self, ca, cb):
        """First candidate key with exactly (ca, cb) counts, or None."""
        for c2, key in self.by_first.get(ca, ()):
            if c2 == cb:
                return key
        return None

    def second_counts(self, ca):
        return [c2 for c2, _ in self.by_first.get(ca, ())]

    def sign_at(self, ca, threshold):
        """-1 / +1 when every halfplane with ca first-set points falls on one
        side of the threshold, 0 when an exact witness exists."""
        counts = self.second_counts(ca)
        if not counts:
            raise InternalInvariantError(f"no halfplane with {ca} first-set points")
        if any(c == threshold for c in counts):
            return 0
        below = any(c < threshold for c in counts)
        above = any(c > threshold for c in counts)
        if below and above:
            # a continuity witness must exist among the candidates
            raise InternalInvariantError(
                "mixed halfplane signs without an exact witness"
            )
        return -1 if below else +1

    def first_key_at(self, ca):
        lst = self.by_first.get(ca, ())
        return lst[0][1] if lst else None

    def inside_ids(self, key):
        p, q, side, fp, fq = key
        pts = self._pts
        px, py = pts[p]
        ux, uy = pts[q][0] - px, pts[q][1] - py
        want = 1 if side == 0 else -1
        inside = set()
        for r in self.ids:
            if r == p or r == q:
                continue
            cr = ux * (pts[r][1] - py) - uy * (pts[r][0] - px)
            if (cr > 0 and want > 0) or (cr < 0 and want < 0):
                inside.add(r)
        if fp:
            inside.add(p)
        if fq:
            inside.add(q)
        return frozenset(inside)

    def cut(self, key):
        """Materialize the candidate as an OrientedCut with above = inside."""
        p, q, side, fp, fq = key
        cp, cq = self.S.coords(p), self.S.coords(q)
        normal = (cp[1] - cq[1], cq[0] - cp[0])  # above = left of p->q
        offset = normal[0] * cp[0] + normal[1] * cp[1]
        if side == 1:
            normal = (-normal[0], -normal[1])
            offset = -offset
        return OrientedCut(
            2,
            (p, q),
            normal,
            offset,
            ((p, +1 if fp else -1), (q, +1 if fq else -1)),
        )


# ---------------------------------------------------------------------------
# sigma scan


@dataclass(frozen=True)
class SigmaEntry:
    """One level of a sigma sequence: a common sign, or an equitable witness."""

    kind: str  # "sign" or "equitable"
    sign: int  # -1/+1 for sign entries, 0 for equitable
    witness: OrientedCut


@dataclass(frozen=True)
class SigmaTable:
    a: int
    b: int
    s: int
    t: int
    sigma_a: dict  # i in [t] -> SigmaEntry, halfplanes with i*a of A vs i*(b+1) of B
    sigma_a1: dict  # j in [s] -> SigmaEntry, halfplanes with j*(a+1) of A vs j*b of B


def _sigma_entry(hp, ca, threshold):
    sign = hp.sign_at(ca, threshold)
    if sign == 0:
        key = hp.exact(ca, threshold)
        return SigmaEntry("equitable", 0, hp.cut(key)), key
    return SigmaEntry("sign", sign, hp.cut(hp.first_key_at(ca))), None


def sigma_scan(inst):
    """Sign/equitable classification of both sigma sequences of the instance.

    Levels follow the non-divisible decomposition: sigma_a(i) compares
    halfplanes holding exactly i*a points of A against i*(b+1) points of B;
    sigma_{a+1}(j) compares j*(a+1) against j*b.
    """
    if inst.divisible:
        raise PreconditionError("sigma_scan needs the non-divisible case")
    a, b, s, t = inst.derived()
    hp = _Halfplanes(inst.S, range(len(inst.S)), inst.a_ids)
    sigma_a = {}
    for i in range(1, t + 1):
        sigma_a[i], _ = _sigma_entry(hp, i * a, i * (b + 1))
    sigma_a1 = {}
    for j in range(1, s + 1):
        sigma_a1[j], _ = _sigma_entry(hp, j * (a + 1), j * b)
    return SigmaTable(a, b, s, t, sigma_a, sigma_a1)


# ---------------------------------------------------------------------------
# 3-cutting


def three_cutting(S, a_ids, b_ids, avec, bvec, expect_hypothesis=False):
    """Split A union B into three parts with prescribed per-color counts and
    pairwise disjoint convex hulls.

    Hypothesis: every open halfplane with exactly avec[i] points of A holds
    fewer than bvec[i] points of B.  Under it a valid 3-fan exists and
    two-line solutions are impossible (such a first line would itself
    violate the hypothesis), so the fan stage is where valid inputs land.
    The hypothesis is re-checked here; when it fails the search still runs
    (two-line splits become possible again) and only an unsuccessful search
    raises HypothesisViolatedError.  With expect_hypothesis=True a caller
    asserts the hypothesis follows from its own scan, so a violation or an
    exhausted search is an internal invariant failure.
    """
    a_ids = frozenset(a_ids)
    b_ids = frozenset(b_ids)
    if a_ids & b_ids:
        raise PreconditionError("A and B must be disjoint")
    avec = tuple(int(v) for v in avec)
    bvec = tuple(int(v) for v in bvec)
    if len(avec) != 3 or len(bvec) != 3:
        raise PreconditionError("need three target pairs")
    if any(v < 1 for v in avec + bvec):
        raise PreconditionError("targets must be positive")
    if sum(avec) != len(a_ids) or sum(bvec) != len(b_ids):
        raise PreconditionError("targets must sum to the class sizes")
    ids = a_ids | b_ids
    hp = _Halfplanes(S, ids, a_ids)

    violations = []
    for idx in range(3):
        for cb in hp.second_counts(avec[idx]):
            if cb >= bvec[idx]:
                violations.append((idx, avec[idx], cb))
                break
    if violations:
        if expect_hypothesis:
            log.warning(
                "3-cutting hypothesis violated despite the caller's scan: %s",
                violations,
            )
            raise InternalInvariantError(
                f"3-cutting hypothesis did not transfer: {violations}"
            )
        log.info("3-cutting called outside its hypothesis: %s", violations)

    result = _two_line_search(S, hp, ids, a_ids, avec, bvec)
    if result is None:
        result = _fan_search(S, ids, a_ids, avec, bvec)
    if result is None and len(ids) <= 18:
        result = _exhaustive_3partition(S, ids, a_ids, avec, bvec)
    if result is not None:
        _check_3cut(S, result, a_ids, avec, bvec)
        return result
    if violations:
        raise HypothesisViolatedError(
            f"no 3-cutting found and the hypothesis was violated: {violations}"
        )
    raise InternalInvariantError(
        "3-cutting search exhausted on input satisfying the hypothesis"
    )


def _check_3cut(S, parts, a_ids, avec, bvec):
    for i, part in enumerate(parts):
        na = len(part & a_ids)
        nb = len(part) - na
        if na != avec[i] or nb != bvec[i]:
            raise InternalInvariantError("3-cutting produced wrong counts")
    for i, j in itertools.combinations(range(3), 2):
        if not hulls_disjoint(S, parts[i], parts[j]):
            raise InternalInvariantError("3-cutting produced intersecting hulls")


def _two_line_search(S, hp, ids, a_ids, avec, bvec):
    """One part cut off by a line, the rest split by a second line.  Under
    the 3-cutting hypothesis this family is empty; it exists to salvage
    calls made outside the hypothesis."""
    for idx in range(3):
        key = hp.exact(avec[idx], bvec[idx])
        if key is None:
            continue
        first = hp.inside_ids(key)
        rest = frozenset(ids) - first
        hp2 = _Halfplanes(S, rest, a_ids & rest)
        others = [o for o in range(3) if o != idx]
        for jdx in others:
            key2 = hp2.exact(avec[jdx], bvec[jdx])
            if key2 is None:
                continue
            second = hp2.inside_ids(key2)
            third = rest - second
            parts = [None, None, None]
            parts[idx] = first
            parts[jdx] = second
            parts[[o for o in others if o != jdx][0]] = third
            return tuple(parts)
    return None


def _primitive_dir(dx, dy):
    k = dx.denominator if isinstance(dx, Fraction) else 1
    k2 = dy.denominator if isinstance(dy, Fraction) else 1
    mul = k * k2 // gcd(k, k2)
    ix, iy = int(dx * mul), int(dy * mul)
    g = gcd(abs(ix), abs(iy))
    return (ix // g, iy // g)


def _dir_cmp(u, v):
    hu = 0 if (u[1] > 0 or (u[1] == 0 and u[0] > 0)) else 1
    hv = 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1
    if hu != hv:
        return hu - hv
    c = u[0] * v[1] - u[1] * v[0]
    return -1 if c > 0 else (1 if c < 0 else 0)


def _line_intersection(p1, p2, p3, p4):
    d1x, d1y = p2[0] - p1[0], p2[1] - p1[1]
    d2x, d2y = p4[0] - p3[0], p4[1] - p3[1]
    den = d1x * d2y - d1y * d2x
    if den == 0:
        return None
    num = (p3[0] - p1[0]) * d2y - (p3[1] - p1[1]) * d2x
    t = Fraction(num, den)
    return (p1[0] + t * d1x, p1[1] + t * d1y)


def _fan_search(S, ids, a_ids, avec, bvec):
    """3-fan search: apexes at input points and at intersections of lines
    through point pairs; around each apex, sector splits aligned to exact
    angular direction groups, filtered by counts and verified for hull
    disjointness."""
    idl = sorted(ids)
    pts = S.int_coords()
    targets = tuple(zip(avec, bvec))
    seen_splits = set()
    point_coords = {(Fraction(pts[i][0]), Fraction(pts[i][1])) for i in idl}

    def try_apex(apex, apex_id):
        res = _fans_at_apex(S, idl, pts, a_ids, targets, apex, apex_id, seen_splits)
        return res

    for i in idl:
        apex = (Fraction(pts[i][0]), Fraction(pts[i][1]))
        res = try_apex(apex, i)
        if res:
            return res
    pairs = list(itertools.combinations(idl, 2))
    seen_apex = set()
    for (l1, l2) in itertools.combinations(pairs, 2):
        apex = _line_intersection(pts[l1[0]], pts[l1[1]], pts[l2[0]], pts[l2[1]])
        if apex is None or apex in seen_apex or apex in point_coords:
            continue
        seen_apex.add(apex)
        res = try_apex(apex, None)
        if res:
            return res
    return None


def _fans_at_apex(S, idl, pts, a_ids, targets, apex, apex_id, seen_splits):
    ax, ay = apex
    groups = {}
    for i in idl:
        if i == apex_id:
            continue
        dx, dy = Fraction(pts[i][0]) - ax, Fraction(pts[i][1]) - ay
        groups.setdefault(_primitive_dir(dx, dy), []).append(i)
    dirs = sorted(groups, key=cmp_to_key(_dir_cmp))
    G = len(dirs)
    if G < 3:
        # every sector needs at least one whole direction group
        return None
    ga = []  # (ids, countA, size) per direction group, circular order
    for d in dirs:
        members = groups[d]
        ga.append((members, sum(1 for m in members if m in a_ids), len(members)))
    # doubled prefix sums over group sizes and A-counts
    ps = [0] * (2 * G + 1)
    pa = [0] * (2 * G + 1)
    for i in range(2 * G):
        _, cA, size = ga[i % G]
        ps[i + 1] = ps[i] + size
        pa[i + 1] = pa[i] + cA
    apex_in_a = apex_id is not None and apex_id in a_ids
    apex_slots = (0, 1, 2) if apex_id is not None else (None,)
    for perm in itertools.permutations(range(3)):
        base = [targets[p] for p in perm]
        for slot in apex_slots:
            segs = [list(base[0]), list(base[1]), list(base[2])]
            if slot is not None:
                segs[slot][0 if apex_in_a else 1] -= 1
                if segs[slot][0] < 0 or segs[slot][1] < 0:
                    continue
            lens = [sa + sb for sa, sb in segs]
            if any(l < 0 for l in lens) or sum(lens) != ps[G]:
                continue
            for g0 in range(G):
                start = ps[g0]
                g1 = bisect_left(ps, start + lens[0], g0, g0 + G + 1)
                if g1 > 2 * G or ps[g1] != start + lens[0]:
                    continue
                if pa[g1] - pa[g0] != segs[0][0]:
                    continue
                g2 = bisect_left(ps, start + lens[0] + lens[1], g1, g0 + G + 1)
                if g2 > 2 * G or ps[g2] != start + lens[0] + lens[1]:
                    continue
                if pa[g2] - pa[g1] != segs[1][0]:
                    continue
                if pa[g0 + G] - pa[g2] != segs[2][0]:
                    continue
                sectors = []
                for lo, hi in ((g0, g1), (g1, g2), (g2, g0 + G)):
                    sec = set()
                    for g in range(lo, hi):
                        sec.update(ga[g % G][0])
                    sectors.append(sec)
                if slot is not None:
                    sectors[slot].add(apex_id)
                parts = [None, None, None]
                for s_idx in range(3):
                    parts[perm[s_idx]] = frozenset(sectors[s_idx])
                sig = frozenset(parts)
                if sig in seen_splits:
                    continue
                seen_splits.add(sig)
                ok = all(
                    hulls_disjoint(S, parts[i], parts[j])
                    for i, j in itertools.combinations(range(3), 2)
                )
                if ok:
                    return tuple(parts)
    return None


def _exhaustive_3partition(S, ids, a_ids, avec, bvec, node_limit=None):
    """Backtracking fallback for small inputs: assign points to the three
    parts with count pruning; a part that reaches its target must be an
    island of the working set, which prunes most dead branches."""
    limit = node_limit or _FALLBACK_NODE_LIMIT
    idl = sorted(ids)
    need = [[avec[i], bvec[i]] for i in range(3)]
    parts = [set(), set(), set()]
    nodes = 0

    def island_ok(part):
        hull = Hull(S, part)
        return not any(
            hull.contains(S.coords(x)) for x in idl if x not in part
        )

    def rec(pos):
        nonlocal nodes
        if pos == len(idl):
            return all(
                hulls_disjoint(S, parts[i], parts[j])
                for i, j in itertools.combinations(range(3), 2)
            )
        x = idl[pos]
        xa = 0 if x in a_ids else 1
        opened = set()
        for p in range(3):
            if need[p][xa] == 0:
                continue
            if not parts[p]:
                key = (need[p][0], need[p][1])
                if key in opened:
                    continue  # symmetry: equal-target empty parts are interchangeable
                opened.add(key)
            nodes += 1
            if nodes > limit:
                raise InternalInvariantError(
                    "exhaustive 3-partition fallback exceeded its node budget"
                )
            parts[p].add(x)
            need[p][xa] -= 1
            done = need[p][0] == 0 and need[p][1] == 0
            ok = island_ok(parts[p]) if done else True
            if ok and rec(pos + 1):
                return True
            parts[p].discard(x)
            need[p][xa] += 1
        return False

    if rec(0):
        return tuple(frozenset(p) for p in parts)
    return None


# ---------------------------------------------------------------------------
# divisible-case equipartition


def equipartition_divisible(S, a_ids, b_ids, a, b, n, cut_log=None):
    """Partition into n parts holding exactly a points of A and b of B each,
    with pairwise disjoint hulls.

    Recursive: prefer a line realizing (a*i, b*i) for i near n/2; when no
    level has an exact line, a sign change in the level sequence feeds the
    3-cutting theorem with the composition (1, i-1, n-i).
    """
    a_ids = frozenset(a_ids)
    b_ids = frozenset(b_ids)
    if len(a_ids) != a * n or len(b_ids) != b * n:
        raise PreconditionError("class sizes must be a*n and b*n")
    if a < 0 or b < 0 or a + b == 0 or n < 1:
        raise PreconditionError("need nonnegative a, b with a+b >= 1 and n >= 1")
    return IslandPartition.of(_equipartition(S, a_ids, b_ids, a, b, n, cut_log))


def _direction_chunks(S, ids, size):
    """Split ids into consecutive chunks along a direction with all
    projections distinct; consecutive chunks are strictly line-separated."""
    pts = S.int_coords()
    idl = sorted(ids)
    m = 0
    while True:
        proj = {i: pts[i][0] + m * pts[i][1] for i in idl}
        if len(set(proj.values())) == len(idl):
            break
        m += 1
    order = sorted(idl, key=lambda i: (proj[i], i))
    return [frozenset(order[i : i + size]) for i in range(0, len(order), size)]


def _equipartition(S, a_ids, b_ids, a, b, n, cut_log):
    if n == 1:
        return [a_ids | b_ids]
    if a == 0:
        return _direction_chunks(S, b_ids, b)
    if b == 0:
        return _direction_chunks(S, a_ids, a)
    ids = a_ids | b_ids
    hp = _Halfplanes(S, ids, a_ids)
    for i in sorted(range(1, n), key=lambda i: (abs(n - 2 * i), i)):
        key = hp.exact(i * a, i * b)
        if key is not None:
            inside = hp.inside_ids(key)
            if cut_log is not None:
                cut_log.append(_log_halfplane(hp, key, "equipartition"))
            left = _equipartition(
                S, a_ids & inside, b_ids & inside, a, b, i, cut_log
            )
            right = _equipartition(
                S, a_ids - inside, b_ids - inside, a, b, n - i, cut_log
            )
            return left + right
    # no exact line at any level: all levels carry a single sign
    first, second = a_ids, b_ids
    ca, cb = a, b
    sign1 = hp.sign_at(ca, cb)
    if sign1 == 0:
        raise InternalInvariantError("exact cut missed by the level loop")
    if sign1 == +1:
        first, second = b_ids, a_ids
        ca, cb = b, a
        hp = _Halfplanes(S, ids, first)
        sign1 = hp.sign_at(ca, cb)
        if sign1 != -1:
            raise InternalInvariantError(
                "level-1 sign did not flip when the roles were exchanged"
            )
    if n == 2:
        raise InternalInvariantError(
            "n=2 without an exact halving line contradicts halfplane continuity"
        )
    flip = None
    for i in range(2, n):
        if hp.sign_at(i * ca, i * cb) == +1:
            flip = i
            break
    if flip is None:
        raise InternalInvariantError(
            "level sequence never changes sign although its ends differ"
        )
    i = flip
    parts3 = three_cutting(
        S,
        first,
        second,
        (ca, (i - 1) * ca, (n - i) * ca),
        (cb, (i - 1) * cb, (n - i) * cb),
        expect_hypothesis=True,
    )
    if cut_log is not None:
        cut_log.append({"type": "three-cut", "parts": [sorted(p) for p in parts3]})
    c1, c2, c3 = parts3
    out = [c1]
    out += _equipartition(S, a_ids & c2, b_ids & c2, a, b, i - 1, cut_log)
    out += _equipartition(S, a_ids & c3, b_ids & c3, a, b, n - i, cut_log)
    return out


def _log_halfplane(hp, key, kind):
    p, q, side, fp, fq = key
    return {
        "type": kind,
        "spanning": [p, q],
        "side": side,
        "include": [bool(fp), bool(fq)],
    }


# ---------------------------------------------------------------------------
# the planar driver


def partition_plane(inst, cut_log=None):
    """Partition the instance into n pairwise disjoint 2-colorful k-islands
    with the near-equipartition refinement (per-part A-counts differ by at
    most one)."""
    parts = _solve_plane(inst.S, frozenset(range(len(inst.S))), inst.k, cut_log)
    if len(parts) != inst.n:
        raise InternalInvariantError("wrong number of parts")
    return IslandPartition.of(parts)


def _solve_plane(S, ids, k, cut_log):
    n = len(ids) // k
    if n * k != len(ids):
        raise InternalInvariantError("subset size not divisible by k")
    a_all = frozenset(i for i in ids if S.color[i] == 0)
    b_all = ids - a_all
    if n == 1:
        return [ids]
    na, nb = len(a_all), len(b_all)
    if na % n == 0 and nb % n == 0:
        return _equipartition(S, a_all, b_all, na // n, nb // n, n, cut_log)
    hp = _Halfplanes(S, ids, a_all)

    def tables(first, second):
        nf, ns = len(first), len(second)
        a, s = nf // n, nf % n
        b, t = ns // n, ns % n
        if a < 1 or b < 1 or s + t != n:
            raise InternalInvariantError("sub-instance parameters degenerate")
        hpr = hp if first is a_all else _Halfplanes(S, ids, first)
        sig_a = {i: hpr.sign_at(i * a, i * (b + 1)) for i in range(1, t + 1)}
        sig_a1 = {j: hpr.sign_at(j * (a + 1), j * b) for j in range(1, s + 1)}
        return hpr, a, b, s, t, sig_a, sig_a1

    def split(hpr, key):
        inside = hpr.inside_ids(key)
        if cut_log is not None:
            cut_log.append(_log_halfplane(hpr, key, "halfplane-split"))
        return _solve_plane(S, inside, k, cut_log) + _solve_plane(
            S, ids - inside, k, cut_log
        )

    hpr, a, b, s, t, sig_a, sig_a1 = tables(a_all, b_all)
    for i in range(1, t + 1):
        if sig_a[i] == 0:
            return split(hpr, hpr.exact(i * a, i * (b + 1)))
    for j in range(1, s + 1):
        if sig_a1[j] == 0:
            return split(hpr, hpr.exact(j * (a + 1), j * b))
    if sig_a[1] != sig_a1[1]:
        raise InternalInvariantError(
            "level-1 signs of the two sequences disagree"
        )
    first, second = a_all, b_all
    if sig_a[1] == +1:
        # exchange the roles of the colors; the level-1 sign flips
        first, second = b_all, a_all
        hpr, a, b, s, t, sig_a, sig_a1 = tables(first, second)
        for i in range(1, t + 1):
            if sig_a[i] == 0:
                return split(hpr, hpr.exact(i * a, i * (b + 1)))
        for j in range(1, s + 1):
            if sig_a1[j] == 0:
                return split(hpr, hpr.exact(j * (a + 1), j * b))
        if sig_a[1] != -1:
            raise InternalInvariantError(
                "level-1 sign did not flip when the roles were exchanged"
            )
    if sig_a[1] != -1 or sig_a1[1] != -1:
        raise InternalInvariantError("level-1 signs must both be -1 here")
    flip_i = next((i for i in range(1, t + 1) if sig_a[i] == +1), None)
    if flip_i is not None:
        i = flip_i
        avec = (a, (i - 1) * a, (n - i) * a + s)
        bvec = (b + 1, (i - 1) * (b + 1), (n - i) * b + (t - i))
        parts3 = three_cutting(S, first, second, avec, bvec, expect_hypothesis=True)
        if cut_log is not None:
            cut_log.append(
                {"type": "three-cut", "parts": [sorted(p) for p in parts3]}
            )
        c1, c2, c3 = parts3
        return [c1] + _solve_plane(S, c2, k, cut_log) + _solve_plane(S, c3, k, cut_log)
    flip_j = next((j for j in range(1, s + 1) if sig_a1[j] == +1), None)
    if flip_j is not None:
        j = flip_j
        avec = (a + 1, (j - 1) * (a + 1), (n - j) * a + (s - j))
        bvec = (b, (j - 1) * b, (n - j) * b + t)
        parts3 = three_cutting(S, first, second, avec, bvec, expect_hypothesis=True)
        if cut_log is not None:
            cut_log.append(
                {"type": "three-cut", "parts": [sorted(p) for p in parts3]}
            )
        c1, c2, c3 = parts3
        return [c1] + _solve_plane(S, c2, k, cut_log) + _solve_plane(S, c3, k, cut_log)
    raise InternalInvariantError(
        "both sigma sequences are constantly -1, contradicting halfplane"
        " complementarity"
    )
