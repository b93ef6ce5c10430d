"""Cones over lattice polygons, divisor classes and polygon equivalence."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import gcd
from typing import Optional, Sequence

from .exact import IntMatrix, LinSystem, det, feasible, matvec, rank, snf, solve_integer

Point = tuple[int, int]


def _cross(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


@dataclass(frozen=True)
class LatticePolygon:
    vertices: tuple[Point, ...]

    def __post_init__(self):
        vs = tuple((int(x), int(y)) for x, y in self.vertices)
        object.__setattr__(self, "vertices", vs)
        if len(vs) < 3:
            raise ValueError("a polygon needs at least 3 vertices")
        n = len(vs)
        for i in range(n):
            if _cross(vs[i - 1], vs[i], vs[(i + 1) % n]) <= 0:
                raise ValueError(
                    f"vertex {i} {vs[i]}: polygon must be strictly convex and counterclockwise"
                )

    def edges(self):
        n = len(self.vertices)
        return [(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)]

    def twice_area(self) -> int:
        return sum(a[0] * b[1] - a[1] * b[0] for a, b in self.edges())

    def boundary_points(self) -> int:
        return sum(gcd(b[0] - a[0], b[1] - a[1]) for a, b in self.edges())

    def interior_points(self) -> list[Point]:
        xs = [v[0] for v in self.vertices]
        ys = [v[1] for v in self.vertices]
        return [
            (x, y)
            for x in range(min(xs), max(xs) + 1)
            for y in range(min(ys), max(ys) + 1)
            if all(_cross(a, b, (x, y)) > 0 for a, b in self.edges())
        ]

    def lattice_points(self) -> list[Point]:
        xs = [v[0] for v in self.vertices]
        ys = [v[1] for v in self.vertices]
        return [
            (x, y)
            for x in range(min(xs), max(xs) + 1)
            for y in range(min(ys), max(ys) + 1)
            if all(_cross(a, b, (x, y)) >= 0 for a, b in self.edges())
        ]

    def translate(self, t: Point) -> "LatticePolygon":
        return LatticePolygon(tuple((x + t[0], y + t[1]) for x, y in self.vertices))


def convex_hull(points: Sequence[Point]) -> LatticePolygon:
    """Counterclockwise hull with collinear boundary points dropped."""
    pts = sorted(set((int(x), int(y)) for x, y in points))
    if len(pts) < 3:
        raise ValueError("convex hull is degenerate")

    def half(seq):
        out: list[Point] = []
        for p in seq:
            while len(out) >= 2 and _cross(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower, upper = half(pts), half(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise ValueError("convex hull is degenerate")
    return LatticePolygon(tuple(hull))


@dataclass(frozen=True)
class Cone:
    generators: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        gens = tuple(tuple(int(x) for x in g) for g in self.generators)
        if not gens:
            raise ValueError("a cone needs at least one generator")
        if any(len(g) != len(gens[0]) for g in gens):
            raise ValueError("generators must all have the same dimension")
        object.__setattr__(self, "generators", gens)

    @property
    def dim(self) -> int:
        return len(self.generators[0])

    @property
    def n(self) -> int:
        return len(self.generators)


def cone_from_polygon(p: LatticePolygon) -> Cone:
    return Cone(tuple((x, y, 1) for x, y in p.vertices))


def validate_cone(c: Cone) -> Optional[str]:
    """None if ``c`` is a valid minimal presentation, else the first problem found."""
    for i, v in enumerate(c.generators, 1):
        g = 0
        for x in v:
            g = gcd(g, x)
        if g != 1:
            return f"generator {i} not primitive"
    gordan = LinSystem(c.dim)
    for v in c.generators:
        gordan.add(v, ">", 0)
    if feasible(gordan) is None:
        return "not strongly convex"
    if rank(c.generators) != c.dim:
        return "not full rank"
    for i, v in enumerate(c.generators):
        s = LinSystem(c.dim).add(v, "=", 0)
        for j, w in enumerate(c.generators):
            if j != i:
                s.add(w, ">", 0)
        if feasible(s) is None:
            return f"generator {i + 1} not extremal"
    return None


def lambda_matrix(c: Cone) -> IntMatrix:
    return c.generators


@dataclass(frozen=True)
class ClassGroup:
    """Cl = Z^n / lambda(Z^d), presented through a Smith form U*lambda*V = S."""

    rank: int
    torsion: tuple[int, ...]
    _U: IntMatrix
    _diag: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self._U)

    def project(self, u: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
        if len(u) != self.n:
            raise ValueError(f"expected {self.n} coordinates, got {len(u)}")
        w = matvec(self._U, u)
        k = len(self._diag)
        free = tuple(w[i] for i in range(len(w)) if i >= k or self._diag[i] == 0)
        tors = tuple(w[i] % s for i, s in enumerate(self._diag) if s > 1)
        return free, tors

    def lift(self, free: Sequence[int], tors: Sequence[int]) -> tuple[int, ...]:
        """Some u in Z^n whose class is (free, tors)."""
        if len(free) != self.rank or len(tors) != len(self.torsion):
            raise ValueError("class name does not match the group shape")
        w = [0] * self.n
        k = len(self._diag)
        fi = iter(free)
        ti = iter(tors)
        for i in range(self.n):
            if i >= k or self._diag[i] == 0:
                w[i] = next(fi)
            elif self._diag[i] > 1:
                w[i] = next(ti)
        u = solve_integer(self._U, w)
        assert u is not None
        return u

    @property
    def is_finite(self) -> bool:
        return self.rank == 0

    def order(self) -> Optional[int]:
        if self.rank:
            return None
        out = 1
        for t in self.torsion:
            out *= t
        return out

    def elements(self):
        """All classes of a finite class group."""
        if self.rank:
            raise ValueError("class group is infinite")
        return [((), t) for t in product(*(range(d) for d in self.torsion))]


@lru_cache(maxsize=None)
def class_group(c: Cone) -> ClassGroup:
    U, S, _ = snf(c.generators)
    diag = tuple(S[i][i] for i in range(min(len(S), len(S[0]))))
    free = len(U) - sum(1 for s in diag if s)
    return ClassGroup(free, tuple(s for s in diag if s > 1), U, diag)


def _check_len(c: Cone, u: Sequence[int]) -> None:
    if len(u) != c.n:
        raise ValueError(f"divisor coordinates have length {len(u)}, cone has {c.n} generators")


def classes_equal(c: Cone, u: Sequence[int], v: Sequence[int]) -> bool:
    _check_len(c, u)
    _check_len(c, v)
    return solve_integer(c.generators, [a - b for a, b in zip(u, v)]) is not None


def canonicalize(c: Cone, u: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    _check_len(c, u)
    return class_group(c).project(u)


def is_gorenstein(c: Cone) -> tuple[bool, Optional[tuple[int, ...]]]:
    """Whether some integral x has <x, v_i> = 1 for all i, with that x."""
    x = solve_integer(c.generators, [1] * c.n)
    return x is not None, x


def is_simplicial(c: Cone) -> bool:
    return c.n == c.dim


def is_reflexive(p: LatticePolygon) -> bool:
    return p.interior_points() == [(0, 0)]


def center(p: LatticePolygon) -> LatticePolygon:
    """Translate a polygon with exactly one interior point so that point is the origin."""
    pts = p.interior_points()
    if len(pts) != 1:
        raise ValueError(f"polygon has {len(pts)} interior lattice points, expected 1")
    return p.translate((-pts[0][0], -pts[0][1]))


Affine = tuple[tuple[tuple[int, int], tuple[int, int]], Point]


def _solve2(p: Sequence[Point], q: Sequence[Point]) -> Optional[Affine]:
    """Integral affine map sending the triple p onto the triple q, if any."""
    (a0, a1, a2), (b0, b1, b2) = p, q
    u1, u2 = (a1[0] - a0[0], a1[1] - a0[1]), (a2[0] - a0[0], a2[1] - a0[1])
    w1, w2 = (b1[0] - b0[0], b1[1] - b0[1]), (b2[0] - b0[0], b2[1] - b0[1])
    d = u1[0] * u2[1] - u1[1] * u2[0]
    if d == 0:
        return None
    # A = W * P^{-1}, columns of P are u1, u2
    inv = ((u2[1], -u2[0]), (-u1[1], u1[0]))
    rows = []
    for r in range(2):
        row = []
        for col in range(2):
            num = w1[r] * inv[0][col] + w2[r] * inv[1][col]
            if num % d:
                return None
            row.append(num // d)
        rows.append(tuple(row))
    A = (rows[0], rows[1])
    if abs(det(A)) != 1:
        return None
    t = (b0[0] - A[0][0] * a0[0] - A[0][1] * a0[1], b0[1] - A[1][0] * a0[0] - A[1][1] * a0[1])
    return A, t


def apply_affine(m: Affine, pt: Point) -> Point:
    (A, t) = m
    return (A[0][0] * pt[0] + A[0][1] * pt[1] + t[0], A[1][0] * pt[0] + A[1][1] * pt[1] + t[1])


def unimodular_equivalent(p: LatticePolygon, q: LatticePolygon) -> Optional[Affine]:
    """(A, t) with A*p + t = q as vertex sets, or None.

    Three consecutive vertices of p are sent to each consecutive triple of q,
    in both orientations; every candidate is checked on the full vertex set.
    """
    if len(p.vertices) != len(q.vertices):
        return None
    if p.twice_area() != q.twice_area() or p.boundary_points() != q.boundary_points():
        return None
    target = set(q.vertices)
    src = p.vertices[:3]
    n = len(q.vertices)
    for step in (1, -1):
        for i in range(n):
            img = [q.vertices[(i + step * k) % n] for k in range(3)]
            m = _solve2(src, img)
            if m and {apply_affine(m, v) for v in p.vertices} == target:
                return m
    return None
