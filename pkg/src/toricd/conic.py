"""Conic divisorial ideals: decision, enumeration and Frobenius decomposition."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import ceil
from typing import Optional, Sequence

from . import _kernels
from .exact import LinSystem, feasible
from .toric import Cone, canonicalize, class_group

ClassName = tuple[tuple[int, ...], tuple[int, ...]]


@dataclass(frozen=True)
class ConicVerdict:
    conic: bool
    witness: Optional[tuple[Fraction, ...]] = None

    def __bool__(self) -> bool:
        return self.conic


def ceil_lambda(c: Cone, y: Sequence) -> tuple[int, ...]:
    ys = [Fraction(v) for v in y]
    return tuple(ceil(sum((a * b for a, b in zip(v, ys)), Fraction(0))) for v in c.generators)


def _cube_system(c: Cone, u: Sequence[int], unit_cube: bool = False) -> LinSystem:
    s = LinSystem(c.dim)
    for v, ui in zip(c.generators, u):
        s.add(v, "<=", ui)
        s.add(v, ">", ui - 1)
    if unit_cube:
        for j in range(c.dim):
            e = [0] * c.dim
            e[j] = 1
            s.add(e, ">=", 0)
            s.add(e, "<", 1)
    return s


def is_conic(c: Cone, u: Sequence[int]) -> ConicVerdict:
    """Decide whether u = ceil(lambda(y)) for some rational y."""
    if len(u) != c.n:
        raise ValueError(f"divisor coordinates have length {len(u)}, cone has {c.n} generators")
    y = feasible(_cube_system(c, u))
    if y is None:
        return ConicVerdict(False)
    assert ceil_lambda(c, y) == tuple(u)
    return ConicVerdict(True, y)


def dual_coords(u: Sequence[int]) -> tuple[int, ...]:
    return tuple(-x for x in u)


def _ranges(c: Cone) -> list[range]:
    out = []
    for v in c.generators:
        lo = sum(min(x, 0) for x in v)
        hi = sum(max(x, 0) for x in v)
        out.append(range(lo, hi + 1))
    return out


def conic_representatives(c: Cone) -> dict[ClassName, tuple[int, ...]]:
    """Each conic class mapped to the lexicographically first u = ceil(lambda(y)), y in [0,1)^d."""
    reps: dict[ClassName, tuple[int, ...]] = {}
    ranges = _ranges(c)

    def partial_ok(prefix):
        s = LinSystem(c.dim)
        for j in range(c.dim):
            e = [0] * c.dim
            e[j] = 1
            s.add(e, ">=", 0)
            s.add(e, "<", 1)
        for v, ui in zip(c.generators, prefix):
            s.add(v, "<=", ui)
            s.add(v, ">", ui - 1)
        return feasible(s) is not None

    def dfs(prefix):
        if len(prefix) == c.n:
            name = canonicalize(c, prefix)
            reps.setdefault(name, tuple(prefix))
            return
        for x in ranges[len(prefix)]:
            nxt = prefix + [x]
            if partial_ok(nxt):
                dfs(nxt)

    dfs([])
    return dict(sorted(reps.items()))


def enumerate_conic_classes(c: Cone) -> frozenset[ClassName]:
    return frozenset(conic_representatives(c))


def _split(code: Sequence[int], free: int) -> ClassName:
    return tuple(int(x) for x in code[:free]), tuple(int(x) for x in code[free:])


def frobenius_classes(c: Cone, m: int) -> Counter:
    """Multiset of classes ceil(lambda(k/m)) over k in {0..m-1}^d; total is m^d."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    cg = class_group(c)
    U, diag = cg._U, cg._diag
    free_rows = [i for i in range(len(U)) if i >= len(diag) or diag[i] == 0]
    tors_rows = [i for i, s in enumerate(diag) if s > 1]
    urows = [U[i] for i in free_rows + tors_rows]
    mods = [0] * len(free_rows) + [diag[i] for i in tors_rows]
    if urows and _kernels.fits_int64(c.generators, urows, m):
        codes = _kernels.frobenius_codes(c.generators, urows, mods, m)
        counts = Counter(map(tuple, codes.tolist()))
        return Counter({_split(k, len(free_rows)): v for k, v in sorted(counts.items())})
    out: Counter = Counter()
    for k in product(range(m), repeat=c.dim):
        out[canonicalize(c, ceil_lambda(c, [Fraction(x, m) for x in k]))] += 1
    return out
