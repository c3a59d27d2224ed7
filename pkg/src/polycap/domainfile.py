"""JSON domain files (format ``polycap-domain-v1``) and the builtin fixtures.

A document looks like::

    {"format": "polycap-domain-v1",
     "outer": {"arcs": [ArcSpec, ...]},
     "holes": [{"arcs": [ArcSpec, ...]}, ...],
     "alpha": [x, y], "alpha_k": [[x, y], ...]}

with ArcSpec one of ``three_point`` (``points``), ``endpoint_center``
(``a``, ``b``, ``center``, ``ccw``), ``segment`` (``a``, ``b``) or
``full_circle`` (``center``, ``radius``, ``ccw``). ``alpha``, ``alpha_k``,
``name`` and ``note`` are optional.

The canonical text form has sorted keys and every number written with
``%.17g``, so parsing and re-serializing a canonical document reproduces it
byte for byte.
"""

from __future__ import annotations

import json
import math
from importlib import resources
from pathlib import Path

from .errors import InvalidGeometry, PolycapError
from .geometry import (
    Arc,
    BoundaryComponent,
    FullCircle,
    MobiusImage,
    PolycircularCondenser,
    Segment,
    arc_end,
    arc_from_endpoints_center,
    arc_from_three_points,
    arc_start,
)

FORMAT = "polycap-domain-v1"

BUILTIN = {
    "annulus-0.7": "annulus-0.7.json",
    "disk-0.8": "disk-0.8.json",
    "lens-2/5-1/10": "lens-0.4-0.1.json",
    "lens-0.8-0.3": "lens-0.8-0.3.json",
    "mobius-E": "mobius-E.json",
    "mobius-E-literal": "mobius-E-literal.json",
    "four-lens": "four-lens.json",
    "bart": "bart.json",
}

_TOP_KEYS = {"format", "name", "note", "outer", "holes", "alpha", "alpha_k"}
_ARC_KEYS = {
    "three_point": {"points"},
    "endpoint_center": {"a", "b", "center", "ccw"},
    "segment": {"a", "b"},
    "full_circle": {"center", "radius", "ccw"},
}


class DomainFormatError(PolycapError, ValueError):
    """Malformed domain document; the message names the offending field."""


def _number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise DomainFormatError(f"{where}: expected a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise DomainFormatError(f"{where}: number must be finite")
    return value


def _point(value, where: str) -> complex:
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise DomainFormatError(f"{where}: expected a point [x, y], got {value!r}")
    return complex(_number(value[0], f"{where}[0]"), _number(value[1], f"{where}[1]"))


def _bool(value, where: str) -> bool:
    if not isinstance(value, bool):
        raise DomainFormatError(f"{where}: expected true or false, got {value!r}")
    return value


def _parse_arc(spec, where: str):
    if not isinstance(spec, dict):
        raise DomainFormatError(f"{where}: expected an object")
    kind = spec.get("kind")
    if kind not in _ARC_KEYS:
        raise DomainFormatError(f"{where}.kind: unknown arc kind {kind!r}")
    want = _ARC_KEYS[kind]
    missing = sorted(want - spec.keys())
    if missing:
        raise DomainFormatError(f"{where}.{missing[0]}: missing field")
    extra = sorted(spec.keys() - want - {"kind"})
    if extra:
        raise DomainFormatError(f"{where}.{extra[0]}: unexpected field")
    try:
        if kind == "three_point":
            pts = spec["points"]
            if not isinstance(pts, list) or len(pts) != 3:
                raise DomainFormatError(f"{where}.points: expected three points")
            return arc_from_three_points(*(_point(p, f"{where}.points[{i}]") for i, p in enumerate(pts)))
        if kind == "endpoint_center":
            return arc_from_endpoints_center(
                _point(spec["a"], f"{where}.a"),
                _point(spec["b"], f"{where}.b"),
                _point(spec["center"], f"{where}.center"),
                _bool(spec["ccw"], f"{where}.ccw"),
            )
        if kind == "segment":
            return Segment(_point(spec["a"], f"{where}.a"), _point(spec["b"], f"{where}.b"))
        return FullCircle(
            _point(spec["center"], f"{where}.center"),
            _number(spec["radius"], f"{where}.radius"),
            _bool(spec["ccw"], f"{where}.ccw"),
        )
    except InvalidGeometry as exc:
        raise DomainFormatError(f"{where}: {exc}") from exc


def _parse_component(spec, where: str) -> BoundaryComponent:
    if not isinstance(spec, dict) or "arcs" not in spec:
        raise DomainFormatError(f"{where}.arcs: missing field")
    arcs = spec["arcs"]
    if not isinstance(arcs, list) or not arcs:
        raise DomainFormatError(f"{where}.arcs: expected a non-empty list")
    pieces = [_parse_arc(a, f"{where}.arcs[{i}]") for i, a in enumerate(arcs)]
    try:
        return BoundaryComponent(tuple(pieces))
    except InvalidGeometry as exc:
        raise DomainFormatError(f"{where}: {exc}") from exc


def parse_domain(doc) -> PolycircularCondenser:
    """Build a condenser from a parsed JSON document (no geometric validation)."""
    if not isinstance(doc, dict):
        raise DomainFormatError("document: expected a JSON object")
    if doc.get("format") != FORMAT:
        raise DomainFormatError(f"format: expected {FORMAT!r}, got {doc.get('format')!r}")
    extra = sorted(doc.keys() - _TOP_KEYS)
    if extra:
        raise DomainFormatError(f"{extra[0]}: unexpected field")
    if "outer" not in doc:
        raise DomainFormatError("outer: missing field")
    outer = _parse_component(doc["outer"], "outer")
    holes = doc.get("holes")
    if not isinstance(holes, list) or not holes:
        raise DomainFormatError("holes: expected a non-empty list")
    holes = tuple(_parse_component(h, f"holes[{k}]") for k, h in enumerate(holes))
    alpha = _point(doc["alpha"], "alpha") if "alpha" in doc else None
    alpha_k = None
    if "alpha_k" in doc:
        ak = doc["alpha_k"]
        if not isinstance(ak, list) or len(ak) != len(holes):
            raise DomainFormatError(f"alpha_k: expected {len(holes)} points")
        alpha_k = tuple(_point(p, f"alpha_k[{k}]") for k, p in enumerate(ak))
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise DomainFormatError("name: expected a string")
    return PolycircularCondenser(outer, holes, alpha, alpha_k, name)


def _xy(z: complex) -> list:
    return [z.real, z.imag]


def _piece_spec(piece) -> dict:
    if isinstance(piece, MobiusImage):
        piece = piece.canonical
    origin = getattr(piece, "origin", None)
    if origin is not None:
        if origin[0] == "three_point":
            return {"kind": "three_point", "points": [_xy(z) for z in origin[1:]]}
        _, a, b, c, ccw = origin
        return {"kind": "endpoint_center", "a": _xy(a), "b": _xy(b), "center": _xy(c), "ccw": ccw}
    if isinstance(piece, Segment):
        return {"kind": "segment", "a": _xy(piece.a), "b": _xy(piece.b)}
    if isinstance(piece, FullCircle):
        return {"kind": "full_circle", "center": _xy(piece.center), "radius": piece.radius, "ccw": piece.ccw}
    if isinstance(piece, Arc):
        return {
            "kind": "endpoint_center",
            "a": _xy(arc_start(piece)),
            "b": _xy(arc_end(piece)),
            "center": _xy(piece.center),
            "ccw": piece.sweep > 0,
        }
    raise TypeError(f"cannot serialize boundary piece {piece!r}")


def domain_to_dict(condenser: PolycircularCondenser, note: str | None = None) -> dict:
    """Document for ``condenser``; pieces are written the way they were constructed when known."""
    doc = {
        "format": FORMAT,
        "outer": {"arcs": [_piece_spec(p) for p in condenser.outer.arcs]},
        "holes": [{"arcs": [_piece_spec(p) for p in h.arcs]} for h in condenser.holes],
    }
    if condenser.name:
        doc["name"] = condenser.name
    if note:
        doc["note"] = note
    if condenser.alpha is not None:
        doc["alpha"] = _xy(condenser.alpha)
    if condenser.alpha_k is not None:
        doc["alpha_k"] = [_xy(z) for z in condenser.alpha_k]
    return doc


def _encode(value, indent: int) -> str:
    pad = "  " * indent
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, float)):
        value = float(value)
        if not math.isfinite(value):
            raise DomainFormatError("cannot serialize a non-finite number")
        # JSON readers turn "-0" into integer 0, so write negative zero as 0
        return "%.17g" % (value + 0.0)
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, (list, tuple)):
        if all(not isinstance(v, (dict, list, tuple)) for v in value) or all(
            isinstance(v, (list, tuple)) and not any(isinstance(w, (dict, list)) for w in v) for v in value
        ):
            return "[" + ", ".join(_encode(v, indent) for v in value) + "]"
        inner = ",\n".join(pad + "  " + _encode(v, indent + 1) for v in value)
        return "[\n" + inner + "\n" + pad + "]"
    if isinstance(value, dict):
        items = ",\n".join(
            f"{pad}  {json.dumps(k)}: {_encode(value[k], indent + 1)}" for k in sorted(value)
        )
        return "{\n" + items + "\n" + pad + "}"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def dumps_canonical(doc) -> str:
    """Canonical text: sorted keys, ``%.17g`` numbers, trailing newline."""
    return _encode(doc, 0) + "\n"


def dump_condenser(condenser: PolycircularCondenser, note: str | None = None) -> str:
    return dumps_canonical(domain_to_dict(condenser, note))


def loads_domain(text: str) -> PolycircularCondenser:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainFormatError(f"document: invalid JSON ({exc})") from exc
    return parse_domain(doc)


def builtin_text(name: str) -> str:
    if name not in BUILTIN:
        raise DomainFormatError(f"domain: unknown builtin {name!r} (known: {', '.join(sorted(BUILTIN))})")
    return resources.files("polycap.fixtures").joinpath(BUILTIN[name]).read_text(encoding="utf-8")


def load_domain(source: str) -> PolycircularCondenser:
    """Load ``builtin:NAME`` or a path to a JSON domain file."""
    if source.startswith("builtin:"):
        return loads_domain(builtin_text(source[len("builtin:"):]))
    path = Path(source)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DomainFormatError(f"domain: cannot read {source!r} ({exc.strerror})") from exc
    return loads_domain(text)
