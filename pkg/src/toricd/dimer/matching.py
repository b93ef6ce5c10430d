"""Perfect matchings and the characteristic polygon."""

from __future__ import annotations

from typing import Optional

from ..toric import LatticePolygon, convex_hull
from .model import DimerModel, check

MAX_EDGES = 24

Matching = frozenset[int]


def perfect_matchings(d: DimerModel, limit: int = MAX_EDGES) -> list[Matching]:
    """All perfect matchings, sorted by their sorted edge-id tuples."""
    check(d)
    if len(d.edges) > limit:
        raise ValueError(f"{len(d.edges)} edges exceeds the exhaustive-search limit of {limit}")
    incident = {v: sorted(d.rotation[v]) for v in d.vertices}
    out: list[tuple[int, ...]] = []

    def rec(covered: set[int], chosen: list[int]):
        free = [v for v in d.vertices if v not in covered]
        if not free:
            out.append(tuple(sorted(chosen)))
            return
        # branch on the uncovered vertex with the fewest usable edges
        best, opts = None, None
        for v in free:
            ok = [e for e in incident[v] if d.other(v, e) not in covered]
            if best is None or len(ok) < len(opts):
                best, opts = v, ok
            if not ok:
                return
        for e in opts:
            u = d.other(best, e)
            covered.update((best, u))
            chosen.append(e)
            rec(covered, chosen)
            chosen.pop()
            covered.difference_update((best, u))

    rec(set(), [])
    return [frozenset(m) for m in sorted(set(out))]


def height(d: DimerModel, m: Matching) -> tuple[int, int]:
    return (sum(d.edges[e].offset[0] for e in m), sum(d.edges[e].offset[1] for e in m))


def matching_points(d: DimerModel, reference: Optional[Matching] = None) -> list[tuple[int, int]]:
    ms = perfect_matchings(d)
    if not ms:
        raise ValueError("model has no perfect matching")
    h0 = height(d, ms[0] if reference is None else reference)
    return [(h[0] - h0[0], h[1] - h0[1]) for h in (height(d, m) for m in ms)]


def characteristic_polygon(d: DimerModel, reference: Optional[Matching] = None) -> LatticePolygon:
    """Convex hull of the classes of M - M0 in H_1(T^2)."""
    return convex_hull(matching_points(d, reference))
