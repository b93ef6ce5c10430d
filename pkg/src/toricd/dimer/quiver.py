"""The dual quiver, with the white vertex on the right of every arrow."""

from __future__ import annotations

from dataclasses import dataclass

from .model import BLACK, WHITE, DimerModel, check, face_of_dart, trace_faces


@dataclass(frozen=True)
class QuiverFace:
    color: str
    vertex: int
    arrows: tuple[int, ...]  # a path: head of each arrow is the tail of the next


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[int, ...]
    arrows: dict[int, tuple[int, int]]  # arrow id (= edge id) -> (tail, head)
    faces: tuple[QuiverFace, ...]

    def tail(self, a: int) -> int:
        return self.arrows[a][0]

    def head(self, a: int) -> int:
        return self.arrows[a][1]


def dual_quiver(d: DimerModel) -> Quiver:
    """Dimer faces become vertices, edges become arrows, dimer vertices become faces.

    Around a black vertex the arrows form a counterclockwise cycle, around a
    white vertex a clockwise one.
    """
    check(d)
    fo = face_of_dart(d)
    arrows = {}
    for e in sorted(d.edges):
        ed = d.edges[e]
        arrows[e] = (fo[(ed.white, e)], fo[(ed.black, e)])
    faces = []
    for v in d.vertices:
        rot = d.rotation[v]
        order = rot if d.colors[v] == BLACK else tuple(reversed(rot))
        faces.append(QuiverFace(d.colors[v], v, tuple(order)))
    q = Quiver(tuple(range(len(trace_faces(d)))), arrows, tuple(faces))
    for f in q.faces:
        k = len(f.arrows)
        for i in range(k):
            assert q.head(f.arrows[i]) == q.tail(f.arrows[(i + 1) % k])
    return q


def quiver_to_json(q: Quiver) -> dict:
    return {
        "vertices": list(q.vertices),
        "arrows": [{"id": a, "tail": t, "head": h} for a, (t, h) in sorted(q.arrows.items())],
        "faces": [
            {"color": f.color, "dimer_vertex": f.vertex, "arrows": list(f.arrows)} for f in q.faces
        ],
    }


def quiver_from_json(obj: dict) -> Quiver:
    arrows = {int(a["id"]): (int(a["tail"]), int(a["head"])) for a in obj["arrows"]}
    faces = tuple(
        QuiverFace(f["color"], int(f["dimer_vertex"]), tuple(int(x) for x in f["arrows"]))
        for f in obj["faces"]
    )
    if any(f.color not in (BLACK, WHITE) for f in faces):
        raise ValueError("face colors must be 'black' or 'white'")
    return Quiver(tuple(int(v) for v in obj["vertices"]), arrows, faces)
