"""Exact linear-programming feasibility over rationals.

A small dense phase-1 simplex with Bland's rule.  It only answers
feasibility questions (is there x >= 0 with Ax = b?), which is all the
geometric kernel needs: point-in-hull membership and separation of two
convex hulls both reduce to such systems.  Everything runs on Fraction
arithmetic, so the answers are exact.
"""

from __future__ import annotations

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def feasible(rows, rhs):
    """Decide whether {x >= 0 : A x = b} is nonempty.

    rows: list of coefficient lists (each of equal length), rhs: list of the
    same length as rows.  Entries may be int or Fraction.
    """
    m = len(rows)
    if m == 0:
        return True
    n = len(rows[0])
    tab = []
    b = []
    for i in range(m):
        row = [Fraction(v) for v in rows[i]]
        bi = Fraction(rhs[i])
        if bi < 0:
            row = [-v for v in row]
            bi = -bi
        # append artificial columns
        row.extend(ONE if j == i else ZERO for j in range(m))
        tab.append(row)
        b.append(bi)

    total = n + m
    basis = list(range(n, total))
    # phase-1 objective: minimize the sum of artificials.  The w-row holds
    # the reduced costs for that objective given the artificial basis.
    w = [ZERO] * total
    wb = ZERO
    for i in range(m):
        for j in range(total):
            w[j] += tab[i][j]
        wb += b[i]
    for j in range(n, total):
        w[j] -= ONE

    while True:
        # Bland: entering = smallest index with positive reduced cost
        enter = -1
        for j in range(total):
            if w[j] > 0:
                enter = j
                break
        if enter < 0:
            return wb == 0
        # ratio test; ties broken by smallest basis index (Bland)
        leave = -1
        best = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = b[i] / a
                if best is None or ratio < best or (
                    ratio == best and basis[i] < basis[leave]
                ):
                    best = ratio
                    leave = i
        if leave < 0:
            # unbounded phase-1 objective cannot happen (bounded below by 0)
            raise ArithmeticError("phase-1 simplex became unbounded")
        piv = tab[leave][enter]
        inv = ONE / piv
        tab[leave] = [v * inv for v in tab[leave]]
        b[leave] *= inv
        prow = tab[leave]
        pb = b[leave]
        for i in range(m):
            if i == leave:
                continue
            f = tab[i][enter]
            if f != 0:
                tab[i] = [v - f * pv for v, pv in zip(tab[i], prow)]
                b[i] -= f * pb
        f = w[enter]
        if f != 0:
            w = [v - f * pv for v, pv in zip(w, prow)]
            wb -= f * pb
        basis[leave] = enter


def point_in_hull(x, pts):
    """Exact test whether x lies in the convex hull of pts (any dimension).

    Feasibility of: sum_i lam_i * p_i = x, sum_i lam_i = 1, lam >= 0.
    """
    pts = list(pts)
    if not pts:
        return False
    d = len(x)
    rows = [[p[j] for p in pts] for j in range(d)]
    rows.append([ONE] * len(pts))
    rhs = [x[j] for j in range(d)] + [ONE]
    return feasible(rows, rhs)


def hulls_intersect(pts_a, pts_b):
    """Exact test whether conv(pts_a) and conv(pts_b) share a point.

    Feasibility of: sum lam_i a_i - sum mu_j b_j = 0, sum lam = 1,
    sum mu = 1, lam, mu >= 0.  Infeasible iff a separating hyperplane
    exists, i.e. the hulls are disjoint.
    """
    pts_a = list(pts_a)
    pts_b = list(pts_b)
    if not pts_a or not pts_b:
        return False
    d = len(pts_a[0])
    na, nb = len(pts_a), len(pts_b)
    rows = []
    for j in range(d):
        rows.append([p[j] for p in pts_a] + [-q[j] for q in pts_b])
    rows.append([ONE] * na + [ZERO] * nb)
    rows.append([ZERO] * na + [ONE] * nb)
    rhs = [ZERO] * d + [ONE, ONE]
    return feasible(rows, rhs)
