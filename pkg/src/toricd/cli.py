"""Command-line interface: ``toricd <group> <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Callable, Optional

from . import atlas
from .conic import conic_representatives, frobenius_classes, is_conic
from .dimer import (
    characteristic_polygon,
    dual_quiver,
    find_rcharge,
    isoradial_zigzag_check,
    perfect_matchings,
    rcharge_verify,
    validate,
    zigzags,
)
from .dimer.quiver import quiver_to_json
from .io import InputError, parse_u, read_cone, read_dimer
from .toric import class_group, validate_cone

OK, NEGATIVE, BAD_INPUT = 0, 1, 2


def _q(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _vec(v) -> str:
    return "[" + ",".join(str(x) for x in v) + "]"


def _group_text(rank: int, torsion) -> str:
    parts = (["Z"] if rank == 1 else [f"Z^{rank}"] if rank else []) + [f"Z/{t}" for t in torsion]
    return " x ".join(parts) if parts else "0"


def _class_json(name) -> dict:
    return {"free": list(name[0]), "torsion": list(name[1])}


def _class_text(name) -> str:
    free, tors = name
    s = _vec(free)
    return s + (" + torsion " + _vec(tors) if tors else "")


class Output:
    def __init__(self, as_json: bool):
        self.as_json = as_json

    def emit(self, payload: dict, lines: list[str]) -> None:
        if self.as_json:
            sys.stdout.write(json.dumps(payload, indent=2) + "\n")
        else:
            for line in lines:
                sys.stdout.write(line + "\n")


def _cone(args):
    c = read_cone(args.cone)
    msg = validate_cone(c)
    if msg:
        raise InputError(f"{args.cone}: invalid cone: {msg}")
    return c


def _dimer(args, need_valid=True):
    d = read_dimer(args.dimer)
    if need_valid:
        msg = validate(d)
        if msg:
            raise InputError(f"{args.dimer}: invalid dimer model: {msg}")
    return d


# handlers return True for a positive verdict, False for a negative one


def cmd_classgroup(args, out: Output) -> bool:
    cg = class_group(_cone(args))
    out.emit(
        {"rank": cg.rank, "torsion": list(cg.torsion)},
        [f"Cl(R) = {_group_text(cg.rank, cg.torsion)}"],
    )
    return True


def cmd_conic_check(args, out: Output) -> bool:
    c = _cone(args)
    u = parse_u(args.u, c.n)
    v = is_conic(c, u)
    if v.conic:
        w = [_q(x) for x in v.witness]
        out.emit({"u": list(u), "conic": True, "witness": w}, [f"conic, witness {_vec(str(x) for x in v.witness)}"])
    else:
        out.emit({"u": list(u), "conic": False, "witness": None}, ["not conic"])
    return v.conic


def cmd_conic_enumerate(args, out: Output) -> bool:
    reps = conic_representatives(_cone(args))
    out.emit(
        {"count": len(reps), "classes": [dict(_class_json(k), u=list(u)) for k, u in reps.items()]},
        [f"{len(reps)} conic classes"] + [f"  {_class_text(k)}  T{tuple(u)}" for k, u in reps.items()],
    )
    return True


def cmd_conic_frobenius(args, out: Output) -> bool:
    if args.m < 1:
        raise InputError("-m: must be a positive integer")
    ms = frobenius_classes(_cone(args), args.m)
    total = sum(ms.values())
    items = sorted(ms.items())
    out.emit(
        {"m": args.m, "total": total, "classes": [dict(_class_json(k), multiplicity=v) for k, v in items]},
        [f"m = {args.m}: {total} summands in {len(items)} classes"]
        + [f"  {_class_text(k)}  x{v}" for k, v in items],
    )
    return True


def cmd_dimer_validate(args, out: Output) -> bool:
    msg = validate(_dimer(args, need_valid=False))
    out.emit({"valid": msg is None, "diagnostic": msg}, ["valid" if msg is None else f"invalid: {msg}"])
    return msg is None


def cmd_dimer_quiver(args, out: Output) -> bool:
    q = dual_quiver(_dimer(args))
    lines = [f"{len(q.vertices)} vertices, {len(q.arrows)} arrows, {len(q.faces)} faces"]
    lines += [f"  arrow {a}: {t} -> {h}" for a, (t, h) in sorted(q.arrows.items())]
    lines += [f"  {f.color} face at vertex {f.vertex}: {list(f.arrows)}" for f in q.faces]
    out.emit(quiver_to_json(q), lines)
    return True


def cmd_dimer_rcharge(args, out: Output) -> bool:
    d = _dimer(args)
    payload: dict = {"isoradial_mode": args.isoradial}
    lines = []
    if d.rcharge is not None:
        rep = rcharge_verify(d, d.rcharge, isoradial=args.isoradial)
        payload["printed"] = {"consistent": rep.ok, "failures": rep.failures}
        lines.append("printed R-charge: " + ("consistent" if rep.ok else "inconsistent"))
        lines += [f"  {f}" for f in rep.failures]
    R = find_rcharge(d, isoradial=args.isoradial)
    kind = "isoradial" if args.isoradial else "consistent"
    payload["found"] = R is not None
    payload["rcharge"] = {str(a): _q(r) for a, r in sorted(R.items())} if R else None
    if R is None:
        lines.append(f"no {kind} R-charge exists")
    else:
        lines.append(f"{kind} R-charge:")
        lines += [f"  arrow {a}: {r}" for a, r in sorted(R.items())]
    out.emit(payload, lines)
    return R is not None


def cmd_dimer_zigzag(args, out: Output) -> bool:
    d = _dimer(args)
    zs = zigzags(d)
    iso = isoradial_zigzag_check(d)
    out.emit(
        {
            "zigzags": [{"edges": list(z.edges), "homology": list(z.homology)} for z in zs],
            "isoradial_criterion": iso,
        },
        [f"{len(zs)} zig-zag paths, criterion {'holds' if iso else 'fails'}"]
        + [f"  {_vec(z.homology)}  edges {list(z.edges)}" for z in zs],
    )
    return iso


def cmd_dimer_matchings(args, out: Output) -> bool:
    ms = perfect_matchings(_dimer(args))
    out.emit(
        {"count": len(ms), "matchings": [sorted(m) for m in ms]},
        [f"{len(ms)} perfect matchings"] + [f"  {sorted(m)}" for m in ms],
    )
    return True


def cmd_dimer_polygon(args, out: Output) -> bool:
    d = _dimer(args)
    if not perfect_matchings(d):
        raise InputError(f"{args.dimer}: model has no perfect matching")
    p = characteristic_polygon(d)
    types = atlas.classify(p)
    out.emit(
        {"polygon": [list(v) for v in p.vertices], "reflexive_types": types},
        [f"polygon {[list(v) for v in p.vertices]}", f"equivalent to type: {', '.join(types) or 'none'}"],
    )
    return True


def cmd_atlas_list(args, out: Output) -> bool:
    rows = []
    for t in atlas.list_types():
        r = atlas.load(t)
        cg = r.class_group_claim
        rows.append(
            {
                "type": t,
                "polygon": [list(v) for v in r.polygon.vertices],
                "class_group": {"rank": cg[0], "torsion": list(cg[1])} if cg else None,
                "mcm_classes": len(r.mcm_classes),
                "witnesses": len(r.witnesses),
                "dimers": [d.name for d in r.dimers],
            }
        )
    lines = [
        f"{r['type']:9} {_group_text(r['class_group']['rank'], r['class_group']['torsion']) if r['class_group'] else '-':14}"
        f" mcm {r['mcm_classes']:2}  witnesses {r['witnesses']:2}  dimers {','.join(r['dimers']) or '-'}"
        for r in rows
    ]
    out.emit({"types": rows}, lines)
    return True


def cmd_atlas_export(args, out: Output) -> bool:
    dest = Path(args.out)
    files = atlas.export(dest)
    payload = {"directory": str(dest), "files": len(files)}
    lines = [f"wrote {len(files)} files to {dest}"]
    if args.svg:
        rec = atlas.load(args.type or "4a")
        Path(args.svg).write_text(atlas.polygon_svg(rec.polygon), encoding="utf-8")
        payload["svg"] = args.svg
        lines.append(f"wrote polygon of type {rec.type_id} to {args.svg}")
    out.emit(payload, lines)
    return True


def cmd_atlas_verify(args, out: Output) -> bool:
    if args.type and args.type not in atlas.TYPE_IDS:
        raise InputError(f"--type: unknown type id {args.type!r}")
    reports = atlas.verify_all([args.type] if args.type else None)
    lines = []
    for r in reports:
        n = sum(c.status == "pass" for c in r.checks)
        lines.append(f"{'PASS' if r.ok else 'FAIL'} {r.type_id} ({n} checks passed)")
        if args.type or not r.ok:
            for c in r.checks:
                if args.type or c.status == "fail":
                    lines.append(f"  {c.status.upper():4} {c.name}" + (f"  [{c.detail}]" if c.detail else ""))
    payload = {
        "ok": all(r.ok for r in reports),
        "reports": [
            {"type": r.type_id, "ok": r.ok, "checks": [{"name": c.name, "status": c.status, "detail": c.detail} for c in r.checks]}
            for r in reports
        ],
    }
    out.emit(payload, lines)
    return payload["ok"]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--strict", action="store_true", help="exit 1 on a negative verdict")

    p = argparse.ArgumentParser(prog="toricd", description=__doc__)
    sub = p.add_subparsers(dest="group", required=True)

    def leaf(parent, name, fn: Callable, help_: str):
        sp = parent.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(fn=fn)
        return sp

    sp = leaf(sub, "classgroup", cmd_classgroup, "divisor class group of a cone")
    sp.add_argument("--cone", required=True)

    conic = sub.add_parser("conic", help="conic divisorial ideals").add_subparsers(dest="cmd", required=True)
    sp = leaf(conic, "check", cmd_conic_check, "decide whether T(u) is conic")
    sp.add_argument("--cone", required=True)
    sp.add_argument("--u", required=True, help="comma-separated integers")
    sp = leaf(conic, "enumerate", cmd_conic_enumerate, "all conic classes")
    sp.add_argument("--cone", required=True)
    sp = leaf(conic, "frobenius", cmd_conic_frobenius, "classes in the Frobenius push-forward")
    sp.add_argument("--cone", required=True)
    sp.add_argument("-m", type=int, required=True)

    dimer = sub.add_parser("dimer", help="dimer models").add_subparsers(dest="cmd", required=True)
    for name, fn, h in [
        ("validate", cmd_dimer_validate, "check the model invariants"),
        ("quiver", cmd_dimer_quiver, "dual quiver"),
        ("rcharge", cmd_dimer_rcharge, "verify / find an R-charge"),
        ("zigzag", cmd_dimer_zigzag, "zig-zag paths and isoradiality criterion"),
        ("matchings", cmd_dimer_matchings, "perfect matchings"),
        ("polygon", cmd_dimer_polygon, "characteristic polygon"),
    ]:
        sp = leaf(dimer, name, fn, h)
        sp.add_argument("--dimer", required=True)
        if name == "rcharge":
            sp.add_argument("--isoradial", action="store_true")

    at = sub.add_parser("atlas", help="bundled case data").add_subparsers(dest="cmd", required=True)
    leaf(at, "list", cmd_atlas_list, "list bundled types")
    sp = leaf(at, "export", cmd_atlas_export, "write the atlas JSON files to a directory")
    sp.add_argument("--out", default="atlas-export")
    sp.add_argument("--svg", help="also write the polygon of --type as SVG")
    sp.add_argument("--type")
    sp = leaf(at, "verify", cmd_atlas_verify, "verify bundled data")
    sp.add_argument("--type")
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return BAD_INPUT if e.code else OK
    out = Output(args.json)
    try:
        positive = args.fn(args, out)
    except (InputError, ValueError, KeyError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else str(e)
        sys.stderr.write(f"toricd: error: {msg}\n")
        return BAD_INPUT
    return NEGATIVE if args.strict and not positive else OK


if __name__ == "__main__":
    sys.exit(main())
