"""Combinatorial layer: Hall-type feasibility for colorful tuple partitions,
the constructive grid partition, color merging, and the two tightness
families that show when merging fails.

Everything here is purely combinatorial; no coordinates appear.  Abstract
element ids are (color, ordinal) pairs so outputs are self-describing.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    HallInfeasibleError,
    InternalInvariantError,
    MergeNotGuaranteedError,
    PreconditionError,
)


@dataclass(frozen=True)
class ColorProfile:
    """Sizes of the m color classes of a kn-element set, with parameters
    (k, n, d) of the colorful-tuple partition question."""

    sizes: tuple
    k: int
    n: int
    d: int

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(int(v) for v in self.sizes))
        if any(v < 0 for v in self.sizes):
            raise PreconditionError("class sizes must be nonnegative")
        if self.n < 0:
            raise PreconditionError("n must be nonnegative")

    @property
    def m(self):
        return len(self.sizes)

    def validate_for_hall(self):
        if self.d < 2:
            raise PreconditionError(f"d must be >= 2, got {self.d}")
        if self.k < self.d:
            raise PreconditionError(f"k={self.k} < d={self.d}")
        if self.m < self.d:
            raise PreconditionError(f"m={self.m} < d={self.d}")
        if sum(self.sizes) != self.k * self.n:
            raise PreconditionError(
                f"sizes sum to {sum(self.sizes)}, expected k*n={self.k * self.n}"
            )
        return self


@dataclass(frozen=True)
class HallReport:
    """Feasibility verdict with per-prefix slacks; the constructed tuples
    when they were requested and exist."""

    feasible: bool
    slack: tuple  # slack[t-1] = (k-d+t)n - (sum of t largest sizes), t in [d-1]
    tuples: tuple = None

    def violated_t(self):
        for t, s in enumerate(self.slack, start=1):
            if s < 0:
                return t
        return None


def _sorted_classes(profile):
    """Class indices sorted by (size desc, original index asc)."""
    return sorted(range(profile.m), key=lambda i: (-profile.sizes[i], i))


def check_hall(profile):
    """Feasibility of a partition into n disjoint d-colorful k-tuples.

    With sizes sorted descending the condition reduces to d-1 prefix
    inequalities: the t largest classes together hold at most (k-d+t)n
    elements.
    """
    profile.validate_for_hall()
    order = _sorted_classes(profile)
    slacks = []
    prefix = 0
    for t in range(1, profile.d):
        prefix += profile.sizes[order[t - 1]]
        slacks.append((profile.k - profile.d + t) * profile.n - prefix)
    return HallReport(all(s >= 0 for s in slacks), tuple(slacks))


def colorful_tuple_partition(profile):
    """Partition abstract elements into n disjoint d-colorful k-tuples.

    Construction: truncate classes larger than n, lay exactly dn of the
    kept elements into an n x d grid column by column (largest class
    first), take rows as d-tuples, then distribute the remaining elements
    round-robin so every tuple reaches k elements.  Elements are (color,
    ordinal) pairs; tuples are sorted by color then ordinal.
    """
    report = check_hall(profile)
    if not report.feasible:
        t = report.violated_t()
        order = _sorted_classes(profile)
        raise HallInfeasibleError(t, order[:t])
    n, d, k = profile.n, profile.d, profile.k
    if n == 0:
        return []
    order = _sorted_classes(profile)
    kept = []  # elements of Y, in class-major order (largest class first)
    for c in order:
        kept.extend((c, j) for j in range(min(profile.sizes[c], n)))
    if len(kept) < d * n:
        raise InternalInvariantError("|Y| < dn despite a feasible profile")
    grid_elems = kept[: d * n]
    placed = Counter(c for c, _ in grid_elems)
    leftover = []  # X \ Y' in the same class-major order
    for c in order:
        leftover.extend((c, j) for j in range(placed[c], profile.sizes[c]))
    tuples = [[] for _ in range(n)]
    for pos, elem in enumerate(grid_elems):
        tuples[pos % n].append(elem)  # column-major fill of the n x d grid
    for pos, elem in enumerate(leftover):
        tuples[pos % n].append(elem)
    result = tuple(tuple(sorted(t)) for t in tuples)
    for t in result:
        if len(t) != k or len({c for c, _ in t}) < d:
            raise InternalInvariantError("constructed tuple violates its contract")
    return result


def merge_colors(profile):
    """Merge the two smallest color classes, preserving the Hall condition.

    Guaranteed for k >= d+1 with m >= 2d-1, and for k = d with m >= 2d;
    outside those ranges the merged profile may become infeasible, so the
    call is refused.
    Returns ((i, j), merged_profile) where i < j are the original indices
    of the merged classes and the merged profile lists sizes descending.
    """
    profile.validate_for_hall()
    if not check_hall(profile).feasible:
        raise PreconditionError("profile does not satisfy the Hall condition")
    k, d, m = profile.k, profile.d, profile.m
    if k >= d + 1:
        if m < 2 * d - 1:
            raise MergeNotGuaranteedError(
                f"merge not guaranteed: k={k} >= d+1 needs m >= {2 * d - 1}, got {m}"
            )
    elif k == d:
        if m < 2 * d:
            raise MergeNotGuaranteedError(
                f"merge not guaranteed: k=d needs m >= {2 * d}, got {m}"
            )
    else:  # k < d rejected by validate_for_hall already
        raise MergeNotGuaranteedError(f"merge not guaranteed for k={k} < d={d}")
    by_size = sorted(range(m), key=lambda i: (profile.sizes[i], i))
    i, j = sorted(by_size[:2])
    sizes = [s for idx, s in enumerate(profile.sizes) if idx not in (i, j)]
    sizes.append(profile.sizes[i] + profile.sizes[j])
    merged = ColorProfile(tuple(sorted(sizes, reverse=True)), k, profile.n, d)
    post = check_hall(merged)
    if not post.feasible:
        raise InternalInvariantError(
            "guaranteed merge violated the Hall condition"
        )
    return (i, j), merged


def tightness_family(d, variant, n, k=None):
    """The two extremal families for which no pair of classes can be merged.

    variant 'k_equals_d': m = 2d-1 equal classes of dn/(2d-1); requires
    n divisible by 2d-1.  variant 'k_greater_d': m = 2d-2 with one class of
    (k-d+1)n and 2d-3 classes of (d-1)n/(2d-3); requires k >= d+1 and n
    divisible by 2d-3.
    """
    if d < 2:
        raise PreconditionError("d must be >= 2")
    if variant == "k_equals_d":
        if n % (2 * d - 1) != 0:
            raise PreconditionError(f"n must be divisible by {2 * d - 1}")
        if k is not None and k != d:
            raise PreconditionError("variant k_equals_d fixes k = d")
        size = d * n // (2 * d - 1)
        return ColorProfile(tuple([size] * (2 * d - 1)), d, n, d)
    if variant == "k_greater_d":
        if k is None or k < d + 1:
            raise PreconditionError("variant k_greater_d needs k >= d+1")
        if n % (2 * d - 3) != 0:
            raise PreconditionError(f"n must be divisible by {2 * d - 3}")
        big = (k - d + 1) * n
        small = (d - 1) * n // (2 * d - 3)
        return ColorProfile(tuple([big] + [small] * (2 * d - 3)), k, n, d)
    raise PreconditionError(f"unknown tightness variant {variant!r}")


# ---------------------------------------------------------------------------
# independent oracles (used by the test suite; kept here so the CLI's scan
# mode can call them too)


def partition_exists_flow(profile):
    """Matching-based existence oracle for d-colorful k-tuple partitions.

    Each tuple needs d elements of pairwise distinct colors (the rest can be
    filled arbitrarily), so existence is a bipartite flow question: colors
    supply up to their size, each of the n tuple-slots accepts at most one
    element per color and d in total.  Independent of the grid construction.
    """
    profile.validate_for_hall()
    n, d = profile.n, profile.d
    if n == 0:
        return True
    m = profile.m
    # nodes: 0 = source, 1..m = colors, m+1..m+n = tuples, m+n+1 = sink
    src, sink = 0, m + n + 1
    cap = {}

    def add(u, v, c):
        cap[(u, v)] = cap.get((u, v), 0) + c
        cap.setdefault((v, u), 0)

    for c in range(m):
        add(src, 1 + c, profile.sizes[c])
        for r in range(n):
            add(1 + c, m + 1 + r, 1)
    for r in range(n):
        add(m + 1 + r, sink, d)
    adj = {}
    for (u, v) in cap:
        adj.setdefault(u, []).append(v)
    flow = 0
    while True:
        # BFS augmenting path
        parent = {src: None}
        queue = [src]
        while queue and sink not in parent:
            u = queue.pop(0)
            for v in adj.get(u, ()):
                if v not in parent and cap[(u, v)] > 0:
                    parent[v] = u
                    queue.append(v)
        if sink not in parent:
            break
        path = []
        v = sink
        while parent[v] is not None:
            path.append((parent[v], v))
            v = parent[v]
        aug = min(cap[e] for e in path)
        for u, v in path:
            cap[(u, v)] -= aug
            cap[(v, u)] += aug
        flow += aug
    return flow == d * n


def partition_exists_enumeration(profile):
    """Exhaustive existence oracle: search over color-count multisets per
    tuple with memoization.  Only meant for small profiles (kn <= ~16)."""
    profile.validate_for_hall()
    k, d = profile.k, profile.d

    @lru_cache(maxsize=None)
    def tuple_choices(counts):
        # all ways to draw a k-multiset meeting >= d colors from counts
        out = []

        def rec(idx, remaining, used_colors, draw):
            if remaining == 0:
                if used_colors >= d:
                    out.append(tuple(draw))
                return
            if idx == len(counts):
                return
            for take in range(min(counts[idx], remaining), -1, -1):
                draw.append(take)
                rec(idx + 1, remaining - take, used_colors + (1 if take else 0), draw)
                draw.pop()

        rec(0, k, 0, [])
        return tuple(out)

    @lru_cache(maxsize=None)
    def solvable(counts, r):
        if r == 0:
            return all(c == 0 for c in counts)
        for draw in tuple_choices(counts):
            rest = tuple(c - t for c, t in zip(counts, draw))
            if solvable(tuple(sorted(rest, reverse=True)), r - 1):
                return True
        return False

    return solvable(tuple(sorted(profile.sizes, reverse=True)), profile.n)


def partition_exists_oracle(profile):
    """Dispatch: raw enumeration up to kn = 12, flow feasibility beyond."""
    if profile.k * profile.n <= 12:
        return partition_exists_enumeration(profile)
    return partition_exists_flow(profile)
