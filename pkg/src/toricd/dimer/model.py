"""Dimer models as rotation systems with Z^2 edge offsets."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from ..exact import snf

BLACK, WHITE = "black", "white"
Dart = tuple[int, int]  # (vertex id, edge id), the edge read as leaving that vertex


@dataclass(frozen=True)
class Edge:
    id: int
    black: int
    white: int
    offset: tuple[int, int] = (0, 0)


@dataclass
class DimerModel:
    """Bipartite graph on the torus.

    ``offset`` of an edge is the lattice translation from the black endpoint's
    fundamental domain to the domain of the white endpoint's copy it joins.
    ``rotation[v]`` lists the edges at v counterclockwise.
    """

    colors: dict[int, str]
    edges: dict[int, Edge]
    rotation: dict[int, tuple[int, ...]]
    rcharge: Optional[dict[int, Fraction]] = field(default=None, compare=False)

    @property
    def vertices(self) -> list[int]:
        return sorted(self.colors)

    def other(self, v: int, e: int) -> int:
        ed = self.edges[e]
        return ed.white if v == ed.black else ed.black

    def displacement(self, v: int, e: int) -> tuple[int, int]:
        """Lattice translation picked up when walking edge e away from v."""
        ox, oy = self.edges[e].offset
        return (ox, oy) if v == self.edges[e].black else (-ox, -oy)

    def next_ccw(self, v: int, e: int) -> int:
        r = self.rotation[v]
        return r[(r.index(e) + 1) % len(r)]

    def next_cw(self, v: int, e: int) -> int:
        r = self.rotation[v]
        return r[(r.index(e) - 1) % len(r)]

    def darts(self) -> list[Dart]:
        return [(v, e) for v in self.vertices for e in self.rotation[v]]


def trace_faces(d: DimerModel) -> list[tuple[Dart, ...]]:
    """Faces as cycles of darts, each face lying to the left of its darts."""
    seen: set[Dart] = set()
    faces = []
    for start in d.darts():
        if start in seen:
            continue
        cycle = []
        cur = start
        while cur not in seen:
            seen.add(cur)
            cycle.append(cur)
            v, e = cur
            u = d.other(v, e)
            cur = (u, d.next_cw(u, e))
        faces.append(tuple(cycle))
    return faces


def face_of_dart(d: DimerModel) -> dict[Dart, int]:
    return {dart: i for i, f in enumerate(trace_faces(d)) for dart in f}


def _check_structure(d: DimerModel) -> Optional[str]:
    for v, col in d.colors.items():
        if col not in (BLACK, WHITE):
            return f"vertex {v} has unknown color {col!r}"
    for e in d.edges.values():
        if e.black not in d.colors or e.white not in d.colors:
            return f"edge {e.id} has an unknown endpoint"
        if d.colors[e.black] != BLACK or d.colors[e.white] != WHITE:
            return "not bipartite"
    incident: dict[int, list[int]] = {v: [] for v in d.colors}
    for e in d.edges.values():
        incident[e.black].append(e.id)
        incident[e.white].append(e.id)
    if set(d.rotation) != set(d.colors):
        return "rotation must list every vertex exactly once"
    for v in d.vertices:
        if sorted(d.rotation[v]) != sorted(incident[v]):
            return f"rotation at vertex {v} does not list each incident edge exactly once"
        if len(incident[v]) < 2:
            return f"vertex {v} has degree {len(incident[v])} < 2"
    return None


def _connected(d: DimerModel) -> bool:
    if not d.colors:
        return False
    start = d.vertices[0]
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for e in d.rotation[v]:
            u = d.other(v, e)
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(d.colors)


def _cycle_lattice_spans(d: DimerModel) -> bool:
    """Whether closed walks in the graph realise every class in Z^2."""
    pos = {d.vertices[0]: (0, 0)}
    stack = [d.vertices[0]]
    gens = []
    while stack:
        v = stack.pop()
        for e in d.rotation[v]:
            u = d.other(v, e)
            dx, dy = d.displacement(v, e)
            p = (pos[v][0] + dx, pos[v][1] + dy)
            if u not in pos:
                pos[u] = p
                stack.append(u)
            else:
                gens.append((p[0] - pos[u][0], p[1] - pos[u][1]))
    gens = [g for g in gens if g != (0, 0)]
    if not gens:
        return False
    _, S, _ = snf(gens)
    diag = [S[i][i] for i in range(min(len(S), 2))]
    return diag == [1, 1]


def validate(d: DimerModel) -> Optional[str]:
    """None for a valid model, else a description of the first violated invariant."""
    msg = _check_structure(d)
    if msg:
        return msg
    if not _connected(d):
        return "graph is not connected"
    faces = trace_faces(d)
    chi = len(d.colors) - len(d.edges) + len(faces)
    if chi != 0:
        return f"not a torus decomposition (V - E + F = {chi})"
    for i, f in enumerate(faces):
        tot = [0, 0]
        for v, e in f:
            dx, dy = d.displacement(v, e)
            tot[0] += dx
            tot[1] += dy
        if tot != [0, 0]:
            return f"face {i} not contractible (total offset {tuple(tot)})"
    if not _cycle_lattice_spans(d):
        return "edge offsets do not generate the homology of the torus"
    return None


def check(d: DimerModel) -> DimerModel:
    msg = validate(d)
    if msg:
        raise ValueError(f"invalid dimer model: {msg}")
    return d


def parse_rational(s) -> Fraction:
    if isinstance(s, bool) or isinstance(s, float):
        raise ValueError(f"rationals must be 'p/q' strings or integers, got {s!r}")
    return Fraction(s) if isinstance(s, int) else Fraction(str(s))


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _where(path: str, msg: str) -> ValueError:
    return ValueError(f"{path}: {msg}")


def _int(x, path: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise _where(path, f"expected integer, got {x!r}")
    return x


def from_json(obj) -> DimerModel:
    """Parse the documented dimer JSON format; errors name the offending position."""
    if not isinstance(obj, dict):
        raise _where("$", "expected an object")
    for key in ("vertices", "edges", "rotation"):
        if key not in obj:
            raise _where("$", f"missing key {key!r}")
    colors = {}
    for i, v in enumerate(obj["vertices"]):
        p = f"$.vertices[{i}]"
        if not isinstance(v, dict):
            raise _where(p, "expected an object")
        vid = _int(v.get("id"), p + ".id")
        if v.get("color") not in (BLACK, WHITE):
            raise _where(p + ".color", f"expected 'black' or 'white', got {v.get('color')!r}")
        if vid in colors:
            raise _where(p + ".id", f"duplicate vertex id {vid}")
        colors[vid] = v["color"]
    edges = {}
    for i, e in enumerate(obj["edges"]):
        p = f"$.edges[{i}]"
        if not isinstance(e, dict):
            raise _where(p, "expected an object")
        off = e.get("offset", [0, 0])
        if not isinstance(off, list) or len(off) != 2:
            raise _where(p + ".offset", "expected a pair of integers")
        eid = _int(e.get("id"), p + ".id")
        if eid in edges:
            raise _where(p + ".id", f"duplicate edge id {eid}")
        edges[eid] = Edge(
            eid,
            _int(e.get("black"), p + ".black"),
            _int(e.get("white"), p + ".white"),
            (_int(off[0], p + ".offset[0]"), _int(off[1], p + ".offset[1]")),
        )
    rotation = {}
    if not isinstance(obj["rotation"], dict):
        raise _where("$.rotation", "expected an object")
    for k, lst in obj["rotation"].items():
        p = f"$.rotation[{k!r}]"
        try:
            vid = int(k)
        except ValueError:
            raise _where(p, "keys must be vertex ids") from None
        if not isinstance(lst, list):
            raise _where(p, "expected a list of edge ids")
        rotation[vid] = tuple(_int(x, f"{p}[{j}]") for j, x in enumerate(lst))
    rc = None
    if obj.get("rcharge") is not None:
        rc = {}
        for k, val in obj["rcharge"].items():
            try:
                rc[int(k)] = parse_rational(val)
            except (ValueError, ZeroDivisionError):
                raise _where(f"$.rcharge[{k!r}]", f"bad rational {val!r}") from None
    return DimerModel(colors, edges, rotation, rc)


def to_json(d: DimerModel) -> dict:
    out = {
        "vertices": [{"id": v, "color": d.colors[v]} for v in d.vertices],
        "edges": [
            {"id": e.id, "black": e.black, "white": e.white, "offset": list(e.offset)}
            for e in (d.edges[k] for k in sorted(d.edges))
        ],
        "rotation": {str(v): list(d.rotation[v]) for v in d.vertices},
    }
    if d.rcharge is not None:
        out["rcharge"] = {str(k): format_rational(d.rcharge[k]) for k in sorted(d.rcharge)}
    return out


def hexagon_model() -> DimerModel:
    """The one-hexagon tiling: a single face bounded by three edges."""
    edges = {0: Edge(0, 0, 1, (0, 0)), 1: Edge(1, 0, 1, (1, 0)), 2: Edge(2, 0, 1, (0, 1))}
    return DimerModel({0: BLACK, 1: WHITE}, edges, {0: (0, 1, 2), 1: (0, 1, 2)})
