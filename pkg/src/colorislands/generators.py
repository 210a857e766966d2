"""Instance generators: random general-position sets, the three-ring
demonstration family, tightness profiles realized as point sets, and
convex-position (moment curve) sets.

All generators are deterministic per seed and reject degenerate samples
(general position is checked, never forced by perturbation of a returned
set)."""

from __future__ import annotations

import math
import random

from .errors import GenerationError, PreconditionError
from .geometry import ColoredPointSet, is_general_position
from .hall import tightness_family

_MAX_TRIES = 200


def random_sizes(rng, total, m, min_per):
    """Uniform over ordered splits of total into m classes, each >= min_per."""
    free = total - m * min_per
    if free < 0:
        raise PreconditionError(
            f"cannot split {total} into {m} classes of at least {min_per}"
        )
    # stars and bars: choose m-1 bar positions among free + m - 1 slots
    bars = sorted(rng.sample(range(free + m - 1), m - 1)) if m > 1 else []
    sizes = []
    prev = -1
    for b in bars + [free + m - 1]:
        sizes.append(b - prev - 1 + min_per)
        prev = b
    return tuple(sizes)


def _coord_box(total, dim):
    # wide enough that rejection sampling for general position converges fast
    return max(64, 4 * total * total) * (2 if dim >= 3 else 1)


def random_general_position(seed, dim, sizes, coord_box=None):
    """Random integer-coordinate colored set in general position."""
    rng = random.Random(seed) if not isinstance(seed, random.Random) else seed
    sizes = tuple(int(v) for v in sizes)
    total = sum(sizes)
    box = coord_box or _coord_box(total, dim)
    for _ in range(_MAX_TRIES):
        colors = [c for c, size in enumerate(sizes) for _ in range(size)]
        rng.shuffle(colors)  # decorrelate colors from coordinate order
        coords = set()
        while len(coords) < total:
            coords.add(tuple(rng.randint(-box, box) for _ in range(dim)))
        S = ColoredPointSet(dim, sorted(coords), colors, m=len(sizes))
        if is_general_position(S):
            return S
    raise GenerationError(
        f"no general-position sample of {total} points in {_MAX_TRIES} tries"
    )


def rings(seed=0, scale=40):
    """Three concentric rings of 50 points, two colors (17/33), for the
    k=5, n=10 planar regime: 8 inner color-0 points, a 15-point middle ring
    mixing 9 color-0 with 6 color-1, and 27 outer color-1 points."""
    rng = random.Random(seed)
    jitter = max(1, scale // 20)
    middle_blue = {2, 4, 7, 10, 13, 15}  # 1-based positions on the middle ring
    for _ in range(_MAX_TRIES):
        coords = []
        colors = []

        def ring(count, radius, color_of, phase):
            for i in range(1, count + 1):
                ang = 2 * math.pi * i / count + phase
                x = round(radius * scale * math.cos(ang)) + rng.randint(-jitter, jitter)
                y = round(radius * scale * math.sin(ang)) + rng.randint(-jitter, jitter)
                coords.append((x, y))
                colors.append(color_of(i))

        ring(8, 750, lambda i: 0, 0.05)
        ring(15, 1750, lambda i: 1 if i in middle_blue else 0, 0.0)
        ring(27, 2750, lambda i: 1, 0.0)
        if len(set(coords)) != len(coords):
            continue
        S = ColoredPointSet(2, coords, colors, m=2)
        if is_general_position(S):
            return S
    raise GenerationError("rings family failed to reach general position")


def convex_position(seed, dim, sizes):
    """Moment-curve points (t, t^2, ..., t^d): always in convex and general
    position; colors are a seeded random assignment with the given sizes."""
    rng = random.Random(seed)
    sizes = tuple(int(v) for v in sizes)
    total = sum(sizes)
    params = rng.sample(range(-10 * total, 10 * total + 1), total)
    coords = [tuple(t**e for e in range(1, dim + 1)) for t in sorted(params)]
    colors = [c for c, size in enumerate(sizes) for _ in range(size)]
    rng.shuffle(colors)
    S = ColoredPointSet(dim, coords, colors, m=len(sizes))
    if not is_general_position(S):
        raise GenerationError("moment curve sample degenerate (duplicate params?)")
    return S


def tightness_points(seed, d, variant, n, k=None):
    """Random general-position points in R^d colored by a tightness profile."""
    profile = tightness_family(d, variant, n, k)
    S = random_general_position(seed, d, profile.sizes)
    return S, profile
