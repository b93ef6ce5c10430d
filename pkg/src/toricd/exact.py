"""Exact integer and rational linear algebra.

Matrices are tuples of tuples of Python ints, so there is never any overflow.
Rationals are :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, gcd
from typing import NamedTuple, Optional, Sequence

Rat = Fraction
IntMatrix = tuple[tuple[int, ...], ...]

LT, LE, EQ = "<", "<=", "="
_REL_ALIASES = {"<": LT, "<=": LE, "≤": LE, "=": EQ, "==": EQ, ">": ">", ">=": ">=", "≥": ">="}


def as_matrix(rows: Sequence[Sequence[int]]) -> IntMatrix:
    m = tuple(tuple(int(x) for x in r) for r in rows)
    if not m or not m[0]:
        raise ValueError("matrix must be nonempty")
    if any(len(r) != len(m[0]) for r in m):
        raise ValueError("ragged matrix")
    return m


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    bt = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(r, c)) for c in bt) for r in a)


def matvec(a: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum(x * y for x, y in zip(r, v)) for r in a)


def det(a: Sequence[Sequence[int]]) -> int:
    """Determinant by fraction-free Bareiss elimination."""
    m = [list(r) for r in a]
    n = len(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1] if n else 1


def rank(a: Sequence[Sequence]) -> int:
    m = [[Fraction(x) for x in r] for r in a]
    r = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
    return r


class SnfResult(NamedTuple):
    U: IntMatrix
    S: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        k = min(len(self.S), len(self.S[0]))
        return tuple(self.S[i][i] for i in range(k))


def snf(a: Sequence[Sequence[int]]) -> SnfResult:
    """Smith normal form with U*A*V = S.

    Pivots are the smallest nonzero absolute value in the remaining block,
    ties broken in row-major order, so the output is deterministic.
    """
    A = [list(r) for r in as_matrix(a)]
    n, d = len(A), len(A[0])
    U = [list(r) for r in identity(n)]
    V = [list(r) for r in identity(d)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (A, V):
            for r in M:
                r[i], r[j] = r[j], r[i]

    def add_row(dst, src, k):  # row dst += k * row src
        for M in (A, U):
            M[dst] = [x + k * y for x, y in zip(M[dst], M[src])]

    def add_col(dst, src, k):
        for M in (A, V):
            for r in M:
                r[dst] += k * r[src]

    for t in range(min(n, d)):
        while True:
            best = None
            for i in range(t, n):
                for j in range(t, d):
                    if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = A[t][t]
            dirty = False
            for i in range(t + 1, n):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    dirty |= A[i][t] != 0
            for j in range(t + 1, d):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    dirty |= A[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, n) for j in range(t + 1, d) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return SnfResult(as_matrix(U), as_matrix(A), as_matrix(V))


def solve_integer(a: Sequence[Sequence[int]], b: Sequence[int]) -> Optional[tuple[int, ...]]:
    """Some integer x with a*x = b, or None if there is none."""
    A = as_matrix(a)
    if len(b) != len(A):
        raise ValueError(f"dimension mismatch: matrix has {len(A)} rows, vector has {len(b)}")
    U, S, V = snf(A)
    c = matvec(U, b)
    z = [0] * len(A[0])
    for i, ci in enumerate(c):
        s = S[i][i] if i < len(z) else 0
        if s == 0:
            if ci != 0:
                return None
        elif ci % s:
            return None
        else:
            z[i] = ci // s
    x = matvec(V, z)
    assert matvec(A, x) == tuple(b)
    return x


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    rel: str
    rhs: Fraction

    def holds(self, y: Sequence[Fraction]) -> bool:
        lhs = sum((c * v for c, v in zip(self.coeffs, y)), Fraction(0))
        return {LT: lhs < self.rhs, LE: lhs <= self.rhs, EQ: lhs == self.rhs}[self.rel]


@dataclass
class LinSystem:
    dims: int
    constraints: list[Constraint] = field(default_factory=list)

    def add(self, coeffs: Sequence, rel: str, rhs) -> "LinSystem":
        """Append ``coeffs . y rel rhs``; '>' and '>=' are stored negated."""
        if len(coeffs) != self.dims:
            raise ValueError(f"expected {self.dims} coefficients, got {len(coeffs)}")
        rel = _REL_ALIASES[rel]
        cs = tuple(Fraction(c) for c in coeffs)
        rhs = Fraction(rhs)
        if rel in (">", ">="):
            cs, rhs, rel = tuple(-c for c in cs), -rhs, (LT if rel == ">" else LE)
        self.constraints.append(Constraint(cs, rel, rhs))
        return self

    def satisfied_by(self, y: Sequence[Fraction]) -> bool:
        return all(c.holds(y) for c in self.constraints)


# An inequality row is (coeffs, rhs, strict): coeffs are primitive integers.
_Row = tuple[tuple[int, ...], Fraction, bool]


def _normalize(coeffs: Sequence[Fraction], rhs: Fraction, strict: bool) -> _Row:
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints), rhs, strict
    return tuple(x // g for x in ints), rhs * den / g, strict


def _add_row(table: dict, row: _Row) -> None:
    coeffs, rhs, strict = row
    old = table.get(coeffs)
    if old is None or rhs < old[0] or (rhs == old[0] and strict):
        table[coeffs] = (rhs, strict)


def _eliminate_equalities(sys: LinSystem):
    """Substitute equalities away. Returns (ineqs, subs) or None if inconsistent.

    subs is a list of (var, coeffs, const): var = const - coeffs . y, applied in reverse.
    """
    n = sys.dims
    eqs = [(list(c.coeffs), c.rhs) for c in sys.constraints if c.rel == EQ]
    ineqs = [(list(c.coeffs), c.rhs, c.rel == LT) for c in sys.constraints if c.rel != EQ]
    subs = []
    while eqs:
        coeffs, rhs = eqs.pop(0)
        k = next((j for j in range(n) if coeffs[j] != 0), None)
        if k is None:
            if rhs != 0:
                return None
            continue
        a = coeffs[k]
        expr = [c / a for c in coeffs]
        const = rhs / a
        expr[k] = Fraction(0)
        subs.append((k, expr, const))

        def sub(cs, r, k=k, expr=expr, const=const):
            f = cs[k]
            if f == 0:
                return cs, r
            cs = [c - f * e for c, e in zip(cs, expr)]
            cs[k] = Fraction(0)
            return cs, r - f * const

        eqs = [sub(cs, r) for cs, r in eqs]
        ineqs = [(*sub(cs, r), s) for cs, r, s in ineqs]
    return ineqs, subs


def _fm(rows: dict, order: Sequence[int]):
    """Fourier-Motzkin elimination along ``order``.

    Returns the list of bound tables recorded per eliminated variable, or None
    when a contradiction 0 < b / 0 <= b is derived.
    """
    stages = []
    for k in order:
        pos, neg, rest = [], [], {}
        for coeffs, (rhs, strict) in rows.items():
            if coeffs[k] > 0:
                pos.append((coeffs, rhs, strict))
            elif coeffs[k] < 0:
                neg.append((coeffs, rhs, strict))
            else:
                rest[coeffs] = (rhs, strict)
        stages.append((k, pos + neg))
        for pc, pr, ps in pos:
            for nc, nr, ns in neg:
                p, q = pc[k], -nc[k]
                comb = [q * a + p * b for a, b in zip(pc, nc)]
                row = _normalize([Fraction(x) for x in comb], q * pr + p * nr, ps or ns)
                if not any(row[0]):
                    if row[1] < 0 or (row[1] == 0 and row[2]):
                        return None
                    continue
                _add_row(rest, row)
        rows = rest
    return stages


def _pick(lo, lo_strict, hi, hi_strict) -> Fraction:
    """A deterministic, preferably simple, value in the interval."""
    def ok(x):
        if lo is not None and (x < lo or (x == lo and lo_strict)):
            return False
        if hi is not None and (x > hi or (x == hi and hi_strict)):
            return False
        return True

    if ok(Fraction(0)):
        return Fraction(0)
    if lo is None:
        return Fraction(floor(hi) - 1)
    if hi is None:
        return Fraction(floor(lo) + 1)
    if not lo_strict:
        return lo
    if not hi_strict:
        return hi
    return (lo + hi) / 2


def _solve(sys: LinSystem, maximize: Optional[int] = None):
    pre = _eliminate_equalities(sys)
    if pre is None:
        return None
    ineqs, subs = pre
    n = sys.dims
    rows: dict = {}
    for cs, rhs, strict in ineqs:
        row = _normalize(cs, rhs, strict)
        if not any(row[0]):
            if row[1] < 0 or (row[1] == 0 and row[2]):
                return None
            continue
        _add_row(rows, row)
    substituted = {k for k, _, _ in subs}
    free = [k for k in range(n) if k not in substituted]
    order = [k for k in free if k != maximize]
    if maximize is not None and maximize in free:
        order.append(maximize)
    stages = _fm(rows, order)
    if stages is None:
        return None
    y: list[Optional[Fraction]] = [None] * n
    for k in free:
        y[k] = Fraction(0)
    for k, bounds in reversed(stages):
        lo = hi = None
        lo_s = hi_s = False
        for coeffs, rhs, strict in bounds:
            s = sum((c * y[j] for j, c in enumerate(coeffs) if j != k and c), Fraction(0))
            v = (rhs - s) / coeffs[k]
            if coeffs[k] > 0:
                if hi is None or v < hi or (v == hi and strict):
                    hi, hi_s = v, strict
            else:
                if lo is None or v > lo or (v == lo and strict):
                    lo, lo_s = v, strict
        assert lo is None or hi is None or lo < hi or (lo == hi and not lo_s and not hi_s)
        if k == maximize and hi is not None and not hi_s:
            y[k] = hi
        else:
            y[k] = _pick(lo, lo_s, hi, hi_s)
    for k, expr, const in reversed(subs):
        y[k] = const - sum((e * y[j] for j, e in enumerate(expr) if e), Fraction(0))
    out = tuple(y)
    assert sys.satisfied_by(out), "Fourier-Motzkin produced an invalid witness"
    return out


def feasible(sys: LinSystem) -> Optional[tuple[Fraction, ...]]:
    """A rational point satisfying every constraint, or None when infeasible.

    Strict and non-strict bounds are tracked separately through the
    elimination, so open conditions are decided exactly.
    """
    return _solve(sys)


def maximize(sys: LinSystem, var: int) -> Optional[tuple[Fraction, ...]]:
    """A feasible point at which coordinate ``var`` is maximal.

    If the maximum is not attained (strict or unbounded above) an arbitrary
    feasible point is returned instead.
    """
    return _solve(sys, maximize=var)


def lp_maximize(
    c: Sequence,
    rows: Sequence[tuple[Sequence, str, object]],
) -> Optional[tuple[Fraction, tuple[Fraction, ...]]]:
    """Maximise c.x over x >= 0 subject to rows (coeffs, rel, rhs), rel in <=, =, >=.

    Dense two-phase simplex over the rationals with Bland's rule, so it always
    terminates. Returns (optimum, x), or None when infeasible. Raises on an
    unbounded objective.
    """
    n = len(c)
    norm = []
    for coeffs, rel, rhs in rows:
        rel = _REL_ALIASES[rel]
        cs = [Fraction(x) for x in coeffs]
        b = Fraction(rhs)
        if len(cs) != n:
            raise ValueError(f"expected {n} coefficients, got {len(cs)}")
        if rel not in (LE, EQ, ">="):
            raise ValueError(f"unsupported relation {rel!r}")
        if b < 0:
            cs, b = [-x for x in cs], -b
            rel = {LE: ">=", ">=": LE, EQ: EQ}[rel]
        norm.append((cs, rel, b))
    m = len(norm)
    n_slack = sum(1 for _, rel, _ in norm if rel != EQ)
    n_art = sum(1 for _, rel, _ in norm if rel != LE)
    width = n + n_slack + n_art
    T = []
    basis = []
    s_col, a_col = n, n + n_slack
    for cs, rel, b in norm:
        row = cs + [Fraction(0)] * (n_slack + n_art) + [b]
        if rel == LE:
            row[s_col] = Fraction(1)
            basis.append(s_col)
            s_col += 1
        else:
            if rel == ">=":
                row[s_col] = Fraction(-1)
                s_col += 1
            row[a_col] = Fraction(1)
            basis.append(a_col)
            a_col += 1
        T.append(row)

    def pivot(r, k):
        p = T[r][k]
        T[r] = [x / p for x in T[r]]
        for i in range(m):
            if i != r and T[i][k]:
                f = T[i][k]
                T[i] = [x - f * y for x, y in zip(T[i], T[r])]
        basis[r] = k

    def run(obj, allowed):
        # obj: maximise sum obj[j] * x_j; reduced costs recomputed each step
        while True:
            red = [obj[j] - sum((obj[basis[i]] * T[i][j] for i in range(m)), Fraction(0)) for j in range(width)]
            k = next((j for j in range(width) if allowed(j) and red[j] > 0), None)
            if k is None:
                return
            best = None
            for i in range(m):
                if T[i][k] > 0:
                    ratio = T[i][-1] / T[i][k]
                    if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                        best = (ratio, i)
            if best is None:
                raise ValueError("linear program is unbounded")
            pivot(best[1], k)

    first_art = n + n_slack
    phase1 = [Fraction(0)] * first_art + [Fraction(-1)] * n_art
    run(phase1, lambda j: True)
    if any(basis[i] >= first_art and T[i][-1] != 0 for i in range(m)):
        return None
    # drive remaining artificial variables out of the basis where possible
    for i in range(m):
        if basis[i] >= first_art:
            k = next((j for j in range(first_art) if T[i][j] != 0), None)
            if k is not None:
                pivot(i, k)
    obj = [Fraction(x) for x in c] + [Fraction(0)] * (n_slack + n_art)
    run(obj, lambda j: j < first_art)
    x = [Fraction(0)] * n
    for i, b in enumerate(basis):
        if b < n:
            x[b] = T[i][-1]
    val = sum((Fraction(ci) * xi for ci, xi in zip(c, x)), Fraction(0))
    return val, tuple(x)
