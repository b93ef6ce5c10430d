"""Zig-zag paths and the combinatorial isoradiality criterion."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .model import WHITE, Dart, DimerModel, check


@dataclass(frozen=True)
class ZigZag:
    darts: tuple[Dart, ...]
    homology: tuple[int, int]

    @property
    def edges(self) -> tuple[int, ...]:
        return tuple(e for _, e in self.darts)


def _step(d: DimerModel, dart: Dart) -> Dart:
    # turn right at white vertices, left at black ones
    v, e = dart
    u = d.other(v, e)
    nxt = d.next_cw(u, e) if d.colors[u] == WHITE else d.next_ccw(u, e)
    return (u, nxt)


def zigzags(d: DimerModel) -> list[ZigZag]:
    """Every dart lies on exactly one zig-zag, so every edge on exactly two strands."""
    check(d)
    seen: set[Dart] = set()
    out = []
    for start in d.darts():
        if start in seen:
            continue
        path = []
        cur = start
        while cur not in seen:
            seen.add(cur)
            path.append(cur)
            cur = _step(d, cur)
        assert cur == start
        hx = sum(d.displacement(v, e)[0] for v, e in path)
        hy = sum(d.displacement(v, e)[1] for v, e in path)
        out.append(ZigZag(tuple(path), (hx, hy)))
    return out


def isoradial_zigzag_check(d: DimerModel) -> bool:
    """Combinatorial isoradiality test.

    Each zig-zag must be a simple closed curve of nonzero class (no repeated
    edge), and any two zig-zags must meet in exactly |det(h1, h2)| edges per
    period, the least possible. Extra meetings would lift to a pair of zig-zags
    crossing twice in the universal cover.
    """
    zs = zigzags(d)
    for z in zs:
        if z.homology == (0, 0) or len(set(z.edges)) != len(z.edges):
            return False
    owners: dict[int, list[int]] = {}
    for i, z in enumerate(zs):
        for e in z.edges:
            owners.setdefault(e, []).append(i)
    shared = Counter(tuple(sorted(v)) for v in owners.values())
    for i in range(len(zs)):
        for j in range(i + 1, len(zs)):
            (a, b), (c, e) = zs[i].homology, zs[j].homology
            if shared.get((i, j), 0) != abs(a * e - b * c):
                return False
    return True
