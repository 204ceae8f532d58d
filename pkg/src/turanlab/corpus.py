"""Bundled domain corpus and the JSON interchange format.

A domain file is a JSON object::

    {
      "name": "truncated_disk",
      "pieces": [
        {"kind": "arc", "tag": "curved",
         "arc": {"center": [0.0, 0.0], "radius": 1.0,
                 "start": 0.3175, "end": 5.9656}},
        {"kind": "segment", "tag": "straight",
         "segment": {"from": [0.95, -0.3122], "to": [0.95, 0.3122]}}
      ]
    }

Pieces are listed counterclockwise and must close up into a convex
curve.  Floats round-trip bit for bit (json uses shortest repr).

Builders for the six reference domains live here as well; the packaged
``domains/*.json`` files are serializations of these builders.
"""

from __future__ import annotations

import json
import math
from importlib import resources
from pathlib import Path

from .certify import Tag, TaggedDecomposition
from .geometry import CircularArc, GeometryError, Segment, build_boundary


class ParseError(ValueError):
    """The input is not readable JSON (or no such domain exists)."""


class ValidationError(ValueError):
    """The JSON parsed but does not describe a valid tagged boundary."""


# ---------------------------------------------------------------- builders

def disk() -> TaggedDecomposition:
    """Unit disk as two half-circle arcs."""
    pieces = [
        CircularArc(0j, 1.0, 0.0, math.pi),
        CircularArc(0j, 1.0, math.pi, 2.0 * math.pi),
    ]
    return TaggedDecomposition(build_boundary(pieces),
                               (Tag.CURVED, Tag.CURVED))


def _regular_polygon(sides: int, side_length: float) -> TaggedDecomposition:
    rc = side_length / (2.0 * math.sin(math.pi / sides))
    verts = [rc * complex(math.cos(2.0 * math.pi * j / sides),
                          math.sin(2.0 * math.pi * j / sides))
             for j in range(sides)]
    pieces = [Segment(verts[j], verts[(j + 1) % sides])
              for j in range(sides)]
    return TaggedDecomposition(build_boundary(pieces),
                               (Tag.STRAIGHT,) * sides)


def heptagon() -> TaggedDecomposition:
    """Regular heptagon with unit side (certifiable: every side is
    shorter than the inscribed-disk radius)."""
    return _regular_polygon(7, 1.0)


def triangle() -> TaggedDecomposition:
    """Equilateral triangle with unit side (control: sides too long)."""
    return _regular_polygon(3, 1.0)


def square() -> TaggedDecomposition:
    """Axis-aligned square of side 2 (control: sides too long)."""
    v = [complex(1, -1), complex(1, 1), complex(-1, 1), complex(-1, -1)]
    pieces = [Segment(v[j], v[(j + 1) % 4]) for j in range(4)]
    return TaggedDecomposition(build_boundary(pieces), (Tag.STRAIGHT,) * 4)


def truncated_disk(cut: float = 0.95) -> TaggedDecomposition:
    """Unit disk with the cap x > cut removed (certifiable)."""
    if not 0.0 < cut < 1.0:
        raise ValueError("cut must lie strictly between 0 and 1")
    tc = math.acos(cut)
    s = math.sin(tc)
    pieces = [
        CircularArc(0j, 1.0, tc, 2.0 * math.pi - tc),
        Segment(complex(cut, -s), complex(cut, s)),
    ]
    return TaggedDecomposition(build_boundary(pieces),
                               (Tag.CURVED, Tag.STRAIGHT))


def stadium() -> TaggedDecomposition:
    """Two unit half-circles joined by straight sides (control: the
    segment/arc junctions are tangent-smooth, zero outer angle)."""
    pieces = [
        Segment(complex(-1, -1), complex(1, -1)),
        CircularArc(complex(1, 0), 1.0, -0.5 * math.pi, 0.5 * math.pi),
        Segment(complex(1, 1), complex(-1, 1)),
        CircularArc(complex(-1, 0), 1.0, 0.5 * math.pi, 1.5 * math.pi),
    ]
    tags = (Tag.STRAIGHT, Tag.CURVED, Tag.STRAIGHT, Tag.CURVED)
    return TaggedDecomposition(build_boundary(pieces), tags)


BUILDERS = {
    "disk": disk,
    "heptagon": heptagon,
    "truncated_disk": truncated_disk,
    "square": square,
    "stadium": stadium,
    "triangle": triangle,
}


# ------------------------------------------------------------- (de)serialize

def domain_to_dict(name: str, td: TaggedDecomposition) -> dict:
    pieces = []
    for piece, tag in zip(td.boundary.pieces, td.tags):
        if isinstance(piece, Segment):
            pieces.append({
                "kind": "segment", "tag": tag.value,
                "segment": {
                    "from": [piece.start.real, piece.start.imag],
                    "to": [piece.end.real, piece.end.imag],
                },
            })
        else:
            pieces.append({
                "kind": "arc", "tag": tag.value,
                "arc": {
                    "center": [piece.center.real, piece.center.imag],
                    "radius": piece.radius,
                    "start": piece.start_angle,
                    "end": piece.end_angle,
                },
            })
    return {"name": name, "pieces": pieces}


def _xy(value, path: str) -> complex:
    ok = (isinstance(value, (list, tuple)) and len(value) == 2
          and all(isinstance(t, (int, float)) and not isinstance(t, bool)
                  for t in value))
    if not ok:
        raise ValidationError(f"{path}: expected an [x, y] number pair")
    return complex(float(value[0]), float(value[1]))


def _number(value, path: str) -> float:
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise ValidationError(f"{path}: expected a number")
    return float(value)


def _require(obj: dict, key: str, path: str):
    if key not in obj:
        raise ValidationError(f"{path}: missing required key {key!r}")
    return obj[key]


def _piece_from_dict(entry, path: str):
    if not isinstance(entry, dict):
        raise ValidationError(f"{path}: expected an object")
    kind = _require(entry, "kind", path)
    tag_str = _require(entry, "tag", path)
    if kind not in ("segment", "arc"):
        raise ValidationError(
            f"{path}.kind: expected 'segment' or 'arc', got {kind!r}")
    if tag_str not in ("straight", "curved"):
        raise ValidationError(
            f"{path}.tag: expected 'straight' or 'curved', got {tag_str!r}")
    if (kind == "segment") != (tag_str == "straight"):
        raise ValidationError(
            f"{path}: kind {kind!r} is incompatible with tag {tag_str!r}")
    if kind == "segment":
        body = _require(entry, "segment", path)
        if not isinstance(body, dict):
            raise ValidationError(f"{path}.segment: expected an object")
        a = _xy(_require(body, "from", f"{path}.segment"),
                f"{path}.segment.from")
        b = _xy(_require(body, "to", f"{path}.segment"), f"{path}.segment.to")
        try:
            piece = Segment(a, b)
        except GeometryError as exc:
            raise ValidationError(f"{path}.segment: {exc}") from exc
    else:
        body = _require(entry, "arc", path)
        if not isinstance(body, dict):
            raise ValidationError(f"{path}.arc: expected an object")
        center = _xy(_require(body, "center", f"{path}.arc"),
                     f"{path}.arc.center")
        radius = _number(_require(body, "radius", f"{path}.arc"),
                         f"{path}.arc.radius")
        start = _number(_require(body, "start", f"{path}.arc"),
                        f"{path}.arc.start")
        end = _number(_require(body, "end", f"{path}.arc"), f"{path}.arc.end")
        try:
            piece = CircularArc(center, radius, start, end)
        except GeometryError as exc:
            raise ValidationError(f"{path}.arc: {exc}") from exc
    return piece, Tag(tag_str)


def domain_from_dict(obj) -> tuple[str, TaggedDecomposition]:
    if not isinstance(obj, dict):
        raise ValidationError("top level: expected an object")
    name = _require(obj, "name", "top level")
    if not isinstance(name, str) or not name:
        raise ValidationError("name: expected a non-empty string")
    entries = _require(obj, "pieces", "top level")
    if not isinstance(entries, list) or not entries:
        raise ValidationError("pieces: expected a non-empty list")
    pieces, tags = [], []
    for i, entry in enumerate(entries):
        piece, tag = _piece_from_dict(entry, f"pieces[{i}]")
        pieces.append(piece)
        tags.append(tag)
    try:
        boundary = build_boundary(pieces)
    except GeometryError as exc:
        raise ValidationError(f"pieces: {exc}") from exc
    try:
        td = TaggedDecomposition(boundary, tuple(tags))
    except ValueError as exc:
        raise ValidationError(f"pieces: {exc}") from exc
    return name, td


# ------------------------------------------------------------------ loading

def _bundled_dir():
    return resources.files("turanlab").joinpath("domains")


def bundled_names() -> list[str]:
    names = []
    for entry in _bundled_dir().iterdir():
        if entry.name.endswith(".json"):
            names.append(entry.name[:-5])
    return sorted(names)


def load_domain_spec(source: str | Path) -> tuple[str, TaggedDecomposition]:
    """Load a domain from a JSON file path, or by bundled name."""
    path = Path(source)
    if path.is_file():
        text = path.read_text()
        label = str(source)
    else:
        candidate = _bundled_dir().joinpath(f"{source}.json")
        if candidate.is_file():
            text = candidate.read_text()
            label = f"bundled:{source}"
        else:
            raise ParseError(
                f"{source}: no such file, and no bundled domain by that "
                f"name (available: {', '.join(bundled_names())})")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{label}: invalid JSON: {exc}") from exc
    return domain_from_dict(obj)
