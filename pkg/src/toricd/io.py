"""Reading cone, polygon and dimer files."""

from __future__ import annotations

import json
from pathlib import Path

from .dimer import DimerModel, from_json
from .toric import Cone, LatticePolygon, cone_from_polygon


class InputError(ValueError):
    """Malformed user input; the message names the offending position."""


def _int(x, path: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise InputError(f"{path}: expected integer, got {json.dumps(x)}")
    return x


def _points(seq, path: str, dim=None) -> list[tuple[int, ...]]:
    if not isinstance(seq, list) or not seq:
        raise InputError(f"{path}: expected a nonempty list of integer vectors")
    out = []
    for i, p in enumerate(seq):
        if not isinstance(p, list):
            raise InputError(f"{path}[{i}]: expected a list of integers")
        if dim is not None and len(p) != dim:
            raise InputError(f"{path}[{i}]: expected {dim} coordinates, got {len(p)}")
        out.append(tuple(_int(x, f"{path}[{i}][{j}]") for j, x in enumerate(p)))
    return out


def polygon_from_json(obj) -> LatticePolygon:
    pts = _points(obj.get("polygon") if isinstance(obj, dict) else None, "$.polygon", 2)
    try:
        return LatticePolygon(tuple(pts))
    except ValueError as e:
        raise InputError(f"$.polygon: {e}") from None


def cone_from_json(obj) -> Cone:
    """Accepts {"polygon": [...]} (cone over the polygon) or {"cone": {...}}."""
    if not isinstance(obj, dict):
        raise InputError("$: expected an object with key 'polygon' or 'cone'")
    if "polygon" in obj:
        return cone_from_polygon(polygon_from_json(obj))
    if "cone" not in obj:
        raise InputError("$: expected key 'polygon' or 'cone'")
    c = obj["cone"]
    if not isinstance(c, dict):
        raise InputError("$.cone: expected an object")
    dim = _int(c.get("dim"), "$.cone.dim")
    if dim < 1:
        raise InputError("$.cone.dim: must be positive")
    gens = _points(c.get("generators"), "$.cone.generators", dim)
    return Cone(tuple(gens))


def _load(path: str | Path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: line {e.lineno} column {e.colno}: {e.msg}") from None


def read_cone(path: str | Path) -> Cone:
    obj = _load(path)
    try:
        return cone_from_json(obj)
    except InputError as e:
        raise InputError(f"{path}: {e}") from None


def read_dimer(path: str | Path) -> DimerModel:
    obj = _load(path)
    try:
        return from_json(obj)
    except (ValueError, TypeError) as e:
        raise InputError(f"{path}: {e}") from None


def parse_u(text: str, n: int) -> tuple[int, ...]:
    parts = [p.strip() for p in text.split(",")]
    out = []
    for i, p in enumerate(parts):
        try:
            out.append(int(p))
        except ValueError:
            raise InputError(f"--u entry {i + 1}: expected integer, got {p!r}") from None
    if len(out) != n:
        raise InputError(f"--u: expected {n} integers (one per generator), got {len(out)}")
    return tuple(out)
