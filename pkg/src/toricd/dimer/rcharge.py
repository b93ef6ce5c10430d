"""R-charges: exact verification and search."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from ..exact import lp_maximize
from .model import DimerModel, check
from .quiver import dual_quiver

RCharge = dict[int, Fraction]


@dataclass
class RChargeReport:
    ok: bool
    isoradial: bool
    failures: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def _equations(d: DimerModel):
    """Rows (coefficients by arrow id, rhs, label) of both equality families."""
    q = dual_quiver(d)
    rows = []
    for f in q.faces:
        coeffs = {a: 1 for a in f.arrows}
        rows.append((coeffs, Fraction(2), f"{f.color} vertex {f.vertex}: face sum"))
    # sum over arrows touching i of (1 - R(a)) = 2, a loop counted twice
    for i in q.vertices:
        coeffs: dict[int, int] = {}
        const = 0
        for a, (t, h) in q.arrows.items():
            k = (t == i) + (h == i)
            if k:
                coeffs[a] = coeffs.get(a, 0) - k
                const += k
        rows.append((coeffs, Fraction(2 - const), f"quiver vertex {i}: vertex sum"))
    return q, rows


def rcharge_verify(d: DimerModel, R: RCharge, isoradial: bool = False) -> RChargeReport:
    """Check both consistency families and the bounds on every arrow exactly."""
    q, rows = _equations(d)
    missing = sorted(set(q.arrows) - set(R))
    if missing:
        raise ValueError(f"R-charge does not assign arrows {missing}")
    fails = []
    for coeffs, rhs, label in rows:
        lhs = sum((c * Fraction(R[a]) for a, c in coeffs.items()), Fraction(0))
        if lhs != rhs:
            fails.append(f"{label} is {lhs}, expected {rhs}")
    for a in sorted(q.arrows):
        r = Fraction(R[a])
        if r <= 0:
            fails.append(f"arrow {a}: R = {r} is not positive")
        elif r > 1:
            fails.append(f"arrow {a}: R = {r} exceeds 1")
    iso = all(Fraction(R[a]) < 1 for a in q.arrows)
    if isoradial and not iso:
        bad = [a for a in sorted(q.arrows) if Fraction(R[a]) >= 1]
        fails.append(f"arrows {bad} have R = 1, not isoradial")
    return RChargeReport(not fails, iso and not fails, fails)


def find_rcharge(d: DimerModel, isoradial: bool = False) -> Optional[RCharge]:
    """A consistent R-charge of maximal margin, or None.

    Maximise eps subject to both equality families and eps <= R(a) (and
    R(a) <= 1 - eps in isoradial mode, R(a) <= 1 otherwise). A charge exists
    exactly when the optimum is positive.
    """
    check(d)
    q, rows = _equations(d)
    ids = sorted(q.arrows)
    col = {a: i for i, a in enumerate(ids)}
    n = len(ids) + 1
    eps = n - 1
    lp = []
    for coeffs, rhs, _ in rows:
        v = [0] * n
        for a, c in coeffs.items():
            v[col[a]] += c
        lp.append((v, "=", rhs))
    for a in ids:
        v = [0] * n
        v[col[a]] = -1
        v[eps] = 1
        lp.append((v, "<=", 0))  # eps <= R(a)
        w = [0] * n
        w[col[a]] = 1
        if isoradial:
            w[eps] = 1
        lp.append((w, "<=", 1))
    objective = [0] * n
    objective[eps] = 1
    res = lp_maximize(objective, lp)
    if res is None or res[0] <= 0:
        return None
    y = res[1]
    R = {a: y[col[a]] for a in ids}
    assert rcharge_verify(d, R, isoradial).ok
    return R
