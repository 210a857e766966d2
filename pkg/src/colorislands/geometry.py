"""Exact-arithmetic geometric kernel.

Points carry arbitrary-precision rational coordinates and every predicate in
this module (orientation, hull membership, halfspace counts, hull
disjointness) is decided exactly; no floating point appears anywhere.
Internally most hot paths run on denominator-cleared integer coordinates,
which leave every sign-based predicate unchanged.

All types are immutable after construction and the operations are pure
functions, so callers may evaluate predicate batches concurrently.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from . import exactlp
from .errors import DegeneratePointSetError, PreconditionError


def as_rational(value):
    """Coerce value (int, Fraction, or 'p/q' string) to Fraction.

    Floats are rejected rather than converted: a float in a coordinate is
    always an upstream mistake.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise PreconditionError(f"coordinates must be exact rationals, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise PreconditionError(f"bad rational literal {value!r}") from exc
    raise PreconditionError(f"cannot interpret {value!r} as an exact rational")


@dataclass(frozen=True)
class Point:
    """A point with a stable id and exact rational coordinates."""

    id: int
    coords: tuple

    @property
    def dim(self):
        return len(self.coords)


class ColoredPointSet:
    """An immutable d-dimensional point set with an m-coloring.

    Color classes partition the point ids and may be empty.  General
    position is *not* enforced here (predicates like is_general_position
    must be callable on degenerate sets); ingestion points that require it
    call require_general_position explicitly.
    """

    __slots__ = ("dim", "points", "color", "m", "_int_coords", "_classes")

    def __init__(self, dim, coords, colors, m=None):
        if dim < 2:
            raise PreconditionError(f"ambient dimension must be >= 2, got {dim}")
        pts = []
        for i, c in enumerate(coords):
            tup = tuple(as_rational(v) for v in c)
            if len(tup) != dim:
                raise PreconditionError(
                    f"point {i} has {len(tup)} coordinates, expected {dim}"
                )
            pts.append(Point(i, tup))
        colors = list(colors)
        if len(colors) != len(pts):
            raise PreconditionError("colors and points must have equal length")
        if len({p.coords for p in pts}) != len(pts):
            raise PreconditionError("points must be pairwise distinct")
        if m is None:
            m = (max(colors) + 1) if colors else 0
        for i, c in enumerate(colors):
            if not isinstance(c, int) or not (0 <= c < m):
                raise PreconditionError(f"point {i} has color {c!r} outside [0, {m})")
        self.dim = dim
        self.points = tuple(pts)
        self.color = {p.id: colors[p.id] for p in pts}
        self.m = m
        self._int_coords = None
        classes = [[] for _ in range(m)]
        for p in pts:
            classes[colors[p.id]].append(p.id)
        self._classes = tuple(tuple(ids) for ids in classes)

    def __len__(self):
        return len(self.points)

    def ids(self):
        return range(len(self.points))

    def coords(self, pid):
        return self.points[pid].coords

    def class_ids(self, c):
        """Sorted ids of color class c."""
        return self._classes[c]

    def sizes(self):
        return tuple(len(c) for c in self._classes)

    def int_coords(self):
        """Denominator-cleared integer coordinates, one tuple per point.

        Signs of all affine predicates are invariant under the uniform
        positive scaling, so these feed the hot integer kernels.
        """
        if self._int_coords is None:
            denoms = [v.denominator for p in self.points for v in p.coords]
            scale = lcm(*denoms) if denoms else 1
            cleared = tuple(
                tuple(int(v * scale) for v in p.coords) for p in self.points
            )
            self._int_coords = cleared
        return self._int_coords


@dataclass(frozen=True)
class IslandPartition:
    """An ordered list of point-id sets claimed to form disjoint islands.

    Validity is checked by verify_island_partition, never assumed.
    """

    parts: tuple

    @staticmethod
    def of(parts):
        return IslandPartition(tuple(frozenset(p) for p in parts))

    def as_lists(self):
        return [sorted(p) for p in self.parts]


def _det_sign(rows):
    """Sign of the determinant of a small square matrix (int/Fraction)."""
    n = len(rows)
    if n == 1:
        v = rows[0][0]
        return (v > 0) - (v < 0)
    if n == 2:
        v = rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
        return (v > 0) - (v < 0)
    if n == 3:
        a, b, c = rows[0]
        d, e, f = rows[1]
        g, h, i = rows[2]
        v = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
        return (v > 0) - (v < 0)
    mat = [[Fraction(v) for v in row] for row in rows]
    sign = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if mat[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            mat[col], mat[piv] = mat[piv], mat[col]
            sign = -sign
        pivot = mat[col][col]
        sign *= 1 if pivot > 0 else -1
        for r in range(col + 1, n):
            f = mat[r][col] / pivot
            if f != 0:
                mat[r] = [v - f * pv for v, pv in zip(mat[r], mat[col])]
    return sign


def _coords_of(p):
    return p.coords if isinstance(p, Point) else tuple(p)


def orientation(simplex):
    """Orientation sign of d+1 points in R^d: +1/-1, or 0 iff affinely
    dependent."""
    pts = [_coords_of(p) for p in simplex]
    if not pts:
        raise PreconditionError("orientation needs d+1 points")
    d = len(pts[0])
    if len(pts) != d + 1 or any(len(p) != d for p in pts):
        raise PreconditionError(
            f"orientation in R^{d} needs exactly {d + 1} points of dimension {d}"
        )
    base = pts[0]
    rows = [[p[j] - base[j] for j in range(d)] for p in pts[1:]]
    return _det_sign(rows)


def _affine_rank(coord_list):
    if not coord_list:
        return -1
    base = coord_list[0]
    rows = [
        [Fraction(v) - Fraction(b) for v, b in zip(c, base)] for c in coord_list[1:]
    ]
    rank = 0
    ncols = len(base)
    rowi = 0
    for col in range(ncols):
        piv = next((r for r in range(rowi, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rowi], rows[piv] = rows[piv], rows[rowi]
        pivot = rows[rowi][col]
        for r in range(rowi + 1, len(rows)):
            f = rows[r][col] / pivot
            if f != 0:
                rows[r] = [v - f * pv for v, pv in zip(rows[r], rows[rowi])]
        rank += 1
        rowi += 1
    return rank


def is_general_position(S):
    """True iff every subset of size <= d+1 is affinely independent."""
    d = S.dim
    pts = S.int_coords()
    n = len(pts)
    if n <= d + 1:
        return _affine_rank([S.coords(i) for i in S.ids()]) == n - 1
    for sub in itertools.combinations(range(n), d + 1):
        base = pts[sub[0]]
        rows = [[pts[i][j] - base[j] for j in range(d)] for i in sub[1:]]
        if _det_sign(rows) == 0:
            return False
    return True


def require_general_position(S):
    if not is_general_position(S):
        raise DegeneratePointSetError(
            "point set is not in general position; refusing to perturb"
        )
    return S


# ---------------------------------------------------------------------------
# hulls and membership


class Hull:
    """Convex hull handle adequate for exact membership queries.

    d = 2 keeps the CCW vertex cycle; d = 3 keeps supporting facet planes
    when the set is full-dimensional; everything else answers through exact
    LP feasibility.
    """

    __slots__ = ("dim", "ids", "_coords", "_poly", "_facets", "_verts")

    def __init__(self, S, ids):
        ids = sorted(set(ids))
        if not ids:
            raise PreconditionError("convex_hull of an empty id set")
        self.dim = S.dim
        self.ids = tuple(ids)
        self._coords = [S.coords(i) for i in ids]
        self._poly = None
        self._facets = None
        self._verts = None
        if self.dim == 2:
            self._poly = _hull_2d(self._coords)
        elif self.dim == 3:
            self._facets = _facets_3d(self._coords)

    @property
    def vertex_ids(self):
        """Ids of the hull vertices, computed on first use."""
        if self._verts is None:
            if self.dim == 2:
                vert = {c: i for i, c in zip(self.ids, self._coords)}
                self._verts = tuple(vert[c] for c in self._poly)
            else:
                self._verts = tuple(
                    pid
                    for pid, c in zip(self.ids, self._coords)
                    if not exactlp.point_in_hull(
                        c, [o for o in self._coords if o != c]
                    )
                )
        return self._verts

    def contains(self, coords):
        """Exact closed-hull membership (boundary counts as inside)."""
        coords = tuple(as_rational(v) for v in coords)
        if self.dim == 2:
            return _point_in_poly_2d(coords, self._poly)
        if self._facets is not None:
            return all(
                _plane_side(coords, normal, offset) >= 0
                for normal, offset in self._facets
            )
        return exactlp.point_in_hull(coords, self._coords)


def _cross2(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull_2d(coords):
    """Monotone chain over exact coordinates; returns CCW vertex cycle.

    Collinear interior points are dropped, so the result may be a single
    point or a segment for degenerate inputs.
    """
    pts = sorted(set(coords))
    if len(pts) <= 2:
        return pts
    lower = []
    for p in pts:
        while len(lower) >= 2 and _cross2(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross2(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    cycle = lower[:-1] + upper[:-1]
    if len(cycle) < 2:
        return pts[:1] if len(pts) == 1 else [pts[0], pts[-1]]
    if len(cycle) == 2 and len(pts) > 2:
        # all points collinear: keep the extremes
        return [pts[0], pts[-1]]
    return cycle


def _on_segment(p, q, x):
    """x collinear with pq assumed; True iff x within the closed segment."""
    return (
        min(p[0], q[0]) <= x[0] <= max(p[0], q[0])
        and min(p[1], q[1]) <= x[1] <= max(p[1], q[1])
    )


def _point_in_poly_2d(x, poly):
    if len(poly) == 1:
        return x == poly[0]
    if len(poly) == 2:
        p, q = poly
        return _cross2(p, q, x) == 0 and _on_segment(p, q, x)
    for i in range(len(poly)):
        if _cross2(poly[i], poly[(i + 1) % len(poly)], x) < 0:
            return False
    return True


def _plane_side(x, normal, offset):
    v = sum(n * c for n, c in zip(normal, x)) - offset
    return (v > 0) - (v < 0)


def _facets_3d(coords):
    """Supporting planes of a full-dimensional 3D hull, oriented inward.

    Returns None when the input is not full-dimensional (callers then fall
    back to LP membership).
    """
    pts = coords
    n = len(pts)
    if n < 4:
        return None
    facets = []
    full = False
    for tri in itertools.combinations(range(n), 3):
        p0, p1, p2 = (pts[t] for t in tri)
        u = [p1[j] - p0[j] for j in range(3)]
        v = [p2[j] - p0[j] for j in range(3)]
        normal = (
            u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0],
        )
        if normal == (0, 0, 0):
            continue
        offset = sum(nc * pc for nc, pc in zip(normal, p0))
        pos = neg = False
        for i in range(n):
            if i in tri:
                continue
            s = _plane_side(pts[i], normal, offset)
            pos = pos or s > 0
            neg = neg or s < 0
            if pos and neg:
                break
        if pos and neg:
            full = True
            continue
        if neg:
            normal = tuple(-c for c in normal)
            offset = -offset
        if pos or neg:
            full = True
        facets.append((normal, offset))
    if not full:
        return None
    return facets


def convex_hull(ids, S):
    """Exact convex hull of the given point ids of S."""
    return Hull(S, ids)


def point_in_hull(coords, ids, S):
    return Hull(S, ids).contains(coords)


def is_island(Y, S):
    """True iff no point of S outside Y lies in conv Y (boundary included)."""
    Y = frozenset(Y)
    if not Y:
        raise PreconditionError("is_island needs a nonempty subset")
    hull = Hull(S, Y)
    return not any(
        hull.contains(S.coords(i)) for i in S.ids() if i not in Y
    )


# ---------------------------------------------------------------------------
# disjointness of hulls


def _segments_touch(p, q, r, s):
    """Do the closed segments pq and rs share at least one point?"""
    d1 = _cross2(p, q, r)
    d2 = _cross2(p, q, s)
    d3 = _cross2(r, s, p)
    d4 = _cross2(r, s, q)
    if d1 * d2 < 0 and d3 * d4 < 0:
        return True
    if d1 == 0 and _on_segment(p, q, r):
        return True
    if d2 == 0 and _on_segment(p, q, s):
        return True
    if d3 == 0 and _on_segment(r, s, p):
        return True
    if d4 == 0 and _on_segment(r, s, q):
        return True
    return False


def _edges(poly):
    if len(poly) < 2:
        return []
    if len(poly) == 2:
        return [(poly[0], poly[1])]
    return [(poly[i], poly[(i + 1) % len(poly)]) for i in range(len(poly))]


def _convex_disjoint_2d(pa, pb):
    for v in pa:
        if _point_in_poly_2d(v, pb):
            return False
    for v in pb:
        if _point_in_poly_2d(v, pa):
            return False
    for e1 in _edges(pa):
        for e2 in _edges(pb):
            if _segments_touch(e1[0], e1[1], e2[0], e2[1]):
                return False
    return True


def hulls_disjoint(S, ids_a, ids_b, method="auto"):
    """Exact test that conv(ids_a) and conv(ids_b) share no point.

    The decision procedure is separating-hyperplane LP feasibility; in the
    plane an equivalent exact polygon test is used instead (the two routes
    are cross-checked in the test suite).
    """
    ids_a, ids_b = list(ids_a), list(ids_b)
    if not ids_a or not ids_b:
        return True
    if method == "auto":
        method = "polygon" if S.dim == 2 else "lp"
    if method == "polygon":
        if S.dim != 2:
            raise PreconditionError("polygon method requires dim 2")
        ints = S.int_coords()  # scaling leaves every predicate sign unchanged
        pa = _hull_2d([ints[i] for i in ids_a])
        pb = _hull_2d([ints[i] for i in ids_b])
        return _convex_disjoint_2d(pa, pb)
    return not exactlp.hulls_intersect(
        [S.coords(i) for i in ids_a], [S.coords(i) for i in ids_b]
    )


# ---------------------------------------------------------------------------
# oriented cuts


@dataclass(frozen=True)
class OrientedCut:
    """A hyperplane spanned by d points of the set, plus a side assignment
    for each spanning point.

    The assignment models an infinitesimal perturbation of the hyperplane:
    each on-plane point is declared to count as strictly above (+1) or
    strictly below (-1).  Every other point of the owning set must evaluate
    strictly above or below; the factory validates that.
    """

    dim: int
    spanning_ids: tuple
    normal: tuple
    offset: Fraction
    side_assignment: tuple  # sorted ((id, +1/-1), ...)

    @property
    def assignment(self):
        return dict(self.side_assignment)

    def side_of(self, coords):
        v = sum(n * as_rational(c) for n, c in zip(self.normal, coords)) - self.offset
        return (v > 0) - (v < 0)

    def realized_side(self, pid, S):
        """Side of point pid with the on-plane assignment applied."""
        asg = self.assignment
        if pid in asg:
            return asg[pid]
        return self.side_of(S.coords(pid))

    def flipped(self):
        return OrientedCut(
            self.dim,
            self.spanning_ids,
            tuple(-c for c in self.normal),
            -self.offset,
            tuple((i, -s) for i, s in self.side_assignment),
        )


def _spanning_normal(coords):
    """Normal of the hyperplane through d points in R^d via cofactors."""
    d = len(coords[0])
    base = coords[0]
    rows = [[c[j] - base[j] for j in range(d)] for c in coords[1:]]
    normal = []
    for j in range(d):
        minor = [[row[c] for c in range(d) if c != j] for row in rows]
        s = 1 if j % 2 == 0 else -1
        if d == 2:
            val = minor[0][0]
        else:
            val = _det_exact(minor)
        normal.append(s * val)
    if all(v == 0 for v in normal):
        return None
    offset = sum(n * c for n, c in zip(normal, base))
    return tuple(normal), offset


def _det_exact(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if n == 3:
        a, b, c = rows[0]
        d_, e, f = rows[1]
        g, h, i = rows[2]
        return a * (e * i - f * h) - b * (d_ * i - f * g) + c * (d_ * h - e * g)
    det = Fraction(0)
    for j in range(n):
        minor = [[rows[r][c] for c in range(n) if c != j] for r in range(1, n)]
        term = rows[0][j] * _det_exact(minor)
        det += term if j % 2 == 0 else -term
    return det


def cut_from_normal(dim, normal, offset, side_assignment=()):
    """An OrientedCut for an arbitrary hyperplane (possibly spanned by fewer
    than d points, e.g. a line through no point of the set)."""
    normal = tuple(as_rational(v) for v in normal)
    if len(normal) != dim or all(v == 0 for v in normal):
        raise PreconditionError("normal must be a nonzero vector of length dim")
    assignment = dict(side_assignment)
    return OrientedCut(
        dim,
        tuple(sorted(assignment)),
        normal,
        as_rational(offset),
        tuple(sorted(assignment.items())),
    )


def cut_through(S, spanning_ids, assignment, orient_above=None):
    """Build the OrientedCut spanned by the given points of S.

    assignment: map id -> +1/-1 for every spanning id.  orient_above: a
    point id that must land strictly above (used to normalize orientation
    deterministically); by default the first nonzero normal component is
    made positive.
    """
    spanning = tuple(sorted(spanning_ids))
    if len(spanning) != S.dim:
        raise PreconditionError(
            f"a canonical cut in R^{S.dim} is spanned by exactly {S.dim} points"
        )
    res = _spanning_normal([S.coords(i) for i in spanning])
    if res is None:
        raise PreconditionError("spanning points are affinely dependent")
    normal, offset = res
    flip = False
    if orient_above is not None:
        v = sum(n * c for n, c in zip(normal, S.coords(orient_above))) - offset
        if v == 0:
            raise PreconditionError("orientation reference lies on the hyperplane")
        flip = v < 0
    else:
        lead = next(v for v in normal if v != 0)
        flip = lead < 0
    if flip:
        normal = tuple(-c for c in normal)
        offset = -offset
    if set(assignment) != set(spanning):
        raise PreconditionError("side_assignment must cover exactly the spanning ids")
    if any(s not in (+1, -1) for s in assignment.values()):
        raise PreconditionError("side assignments must be +1 or -1")
    cut = OrientedCut(
        S.dim,
        spanning,
        normal,
        offset,
        tuple(sorted(assignment.items())),
    )
    for pid in S.ids():
        if pid in assignment:
            continue
        if cut.side_of(S.coords(pid)) == 0:
            raise PreconditionError(
                f"point {pid} lies on the cut but is not a spanning point"
            )
    return cut


@dataclass(frozen=True)
class HalfspaceCounts:
    """Per-color strict counts plus the realized (assignment-applied) view."""

    per_color: tuple  # (above, on, below) per color, strict
    realized: tuple  # (above, below) per color with side_assignment applied
    on_ids: tuple

    def totals(self):
        a = sum(c[0] for c in self.per_color)
        o = sum(c[1] for c in self.per_color)
        b = sum(c[2] for c in self.per_color)
        return a, o, b

    def realized_totals(self):
        return (
            sum(c[0] for c in self.realized),
            sum(c[1] for c in self.realized),
        )


def halfspace_counts(cut, S):
    """Exact per-color (above, on, below) counts for the cut over S."""
    if cut.dim != S.dim:
        raise PreconditionError("cut dimension does not match the point set")
    asg = cut.assignment
    per = [[0, 0, 0] for _ in range(S.m)]
    real = [[0, 0] for _ in range(S.m)]
    on_ids = []
    for pid in S.ids():
        c = S.color[pid]
        s = cut.side_of(S.coords(pid))
        if s > 0:
            per[c][0] += 1
            real[c][0] += 1
        elif s < 0:
            per[c][2] += 1
            real[c][1] += 1
        else:
            per[c][1] += 1
            on_ids.append(pid)
            side = asg.get(pid)
            if side is None:
                raise PreconditionError(
                    f"point {pid} lies on the cut without a side assignment"
                )
            real[c][0 if side > 0 else 1] += 1
    return HalfspaceCounts(
        tuple(tuple(t) for t in per),
        tuple(tuple(t) for t in real),
        tuple(on_ids),
    )


# ---------------------------------------------------------------------------
# partition verification


@dataclass
class ClauseResult:
    name: str
    status: str  # pass / fail / skip
    detail: str = ""


@dataclass
class PartitionReport:
    passed: bool
    clauses: list
    failed_clause: str = None
    witness: str = None

    def summary(self):
        lines = [
            f"{c.name}: {c.status}" + (f" ({c.detail})" if c.detail else "")
            for c in self.clauses
        ]
        head = "PASS" if self.passed else f"FAIL [{self.failed_clause}] {self.witness}"
        return "\n".join([head] + lines)


def verify_island_partition(P, S, k, j):
    """Check that P partitions S into j-colorful k-islands with pairwise
    disjoint hulls.

    Verification never raises; malformed input is reported as a failure of
    the first clause it violates.  Clauses are checked in order and the
    report names the first violated clause with a witness.
    """
    clauses = []

    def fail(name, witness):
        clauses.append(ClauseResult(name, "fail", witness))
        remaining = ["partition", "part-size", "colorful", "hulls-disjoint", "island"]
        for r in remaining[remaining.index(name) + 1 :]:
            clauses.append(ClauseResult(r, "skip"))
        return PartitionReport(False, clauses, name, witness)

    try:
        parts = [frozenset(p) for p in P.parts]
    except (TypeError, AttributeError):
        return fail("partition", "not an IslandPartition")
    all_ids = set(S.ids())
    seen = set()
    for idx, part in enumerate(parts):
        if not part:
            return fail("partition", f"part {idx} is empty")
        if not part <= all_ids:
            return fail("partition", f"part {idx} names unknown ids {sorted(part - all_ids)}")
        if part & seen:
            return fail("partition", f"part {idx} reuses ids {sorted(part & seen)}")
        seen |= part
    if seen != all_ids:
        return fail("partition", f"ids {sorted(all_ids - seen)} are uncovered")
    clauses.append(ClauseResult("partition", "pass"))

    for idx, part in enumerate(parts):
        if len(part) != k:
            return fail("part-size", f"part {idx} has size {len(part)} != k={k}")
    clauses.append(ClauseResult("part-size", "pass"))

    for idx, part in enumerate(parts):
        ncolors = len({S.color[i] for i in part})
        if ncolors < j:
            return fail("colorful", f"part {idx} meets only {ncolors} < j={j} colors")
    clauses.append(ClauseResult("colorful", "pass"))

    for ia, ib in itertools.combinations(range(len(parts)), 2):
        if not hulls_disjoint(S, parts[ia], parts[ib]):
            return fail("hulls-disjoint", f"hulls intersect: parts {ia} and {ib}")
    clauses.append(ClauseResult("hulls-disjoint", "pass"))

    # Redundant once the hulls are disjoint and the parts cover S, but kept
    # as an explicit consistency check with its own witness.
    for idx, part in enumerate(parts):
        hull = Hull(S, part)
        for pid in all_ids - part:
            if hull.contains(S.coords(pid)):
                return fail("island", f"part {idx} is not an island: contains point {pid}")
    clauses.append(ClauseResult("island", "pass"))

    return PartitionReport(True, clauses)
