"""JSON instance and solution files.

Coordinates are string-encoded exact rationals ("p/q" or "p"); any float in
a coordinate position is a schema violation and is rejected at parse time.
Serialization is canonical (sorted keys, fixed separators), so identical
inputs produce byte-identical files.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import InstanceFormatError
from .geometry import ColoredPointSet, IslandPartition


def _reject_float(text):
    raise InstanceFormatError(
        f"float literal {text!r} in input; coordinates must be rational strings"
    )


def loads(text):
    try:
        return json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"invalid JSON: {exc}") from exc


def dumps(doc):
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _fraction_str(v):
    return str(Fraction(v))


def instance_to_doc(S, meta=None):
    return {
        "dim": S.dim,
        "colors": S.m,
        "points": [
            {"x": [_fraction_str(v) for v in S.coords(i)], "color": S.color[i]}
            for i in S.ids()
        ],
        "meta": dict(meta or {}),
    }


def instance_from_doc(doc):
    """Parse and validate an instance document into (set, meta)."""
    if not isinstance(doc, dict):
        raise InstanceFormatError("instance document must be an object")
    for field in ("dim", "colors", "points"):
        if field not in doc:
            raise InstanceFormatError(f"instance document misses field {field!r}")
    dim = doc["dim"]
    m = doc["colors"]
    if not isinstance(dim, int) or not isinstance(m, int):
        raise InstanceFormatError("dim and colors must be integers")
    coords = []
    colors = []
    for idx, p in enumerate(doc["points"]):
        if not isinstance(p, dict) or "x" not in p or "color" not in p:
            raise InstanceFormatError(f"point {idx} must have fields x and color")
        xs = p["x"]
        if not isinstance(xs, list):
            raise InstanceFormatError(f"point {idx}: x must be a list")
        vals = []
        for v in xs:
            if not isinstance(v, str):
                raise InstanceFormatError(
                    f"point {idx}: coordinates must be rational strings, got {v!r}"
                )
            try:
                vals.append(Fraction(v))
            except (ValueError, ZeroDivisionError) as exc:
                raise InstanceFormatError(
                    f"point {idx}: bad rational literal {v!r}"
                ) from exc
        if not isinstance(p["color"], int):
            raise InstanceFormatError(f"point {idx}: color must be an integer")
        coords.append(tuple(vals))
        colors.append(p["color"])
    try:
        S = ColoredPointSet(dim, coords, colors, m=m)
    except Exception as exc:
        raise InstanceFormatError(f"invalid instance: {exc}") from exc
    return S, dict(doc.get("meta") or {})


def load_instance(path):
    with open(path, "r", encoding="utf-8") as fh:
        return instance_from_doc(loads(fh.read()))


def save_instance(path, S, meta=None):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(instance_to_doc(S, meta)))


def solution_to_doc(partition, cuts=None, verified=False, extra=None):
    doc = {
        "parts": partition.as_lists(),
        "cuts": list(cuts or []),
        "verified": bool(verified),
    }
    if extra:
        doc.update(extra)
    return doc


def solution_from_doc(doc):
    if not isinstance(doc, dict) or "parts" not in doc:
        raise InstanceFormatError("solution document must contain parts")
    parts = doc["parts"]
    if not isinstance(parts, list) or not all(isinstance(p, list) for p in parts):
        raise InstanceFormatError("parts must be a list of id lists")
    for p in parts:
        if not all(isinstance(i, int) for i in p):
            raise InstanceFormatError("part members must be integer point ids")
    return IslandPartition.of(parts)


def load_solution(path):
    with open(path, "r", encoding="utf-8") as fh:
        return solution_from_doc(loads(fh.read()))
