"""Bundled case data for the reflexive types, with end-to-end verification."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional

from ..conic import ceil_lambda, dual_coords, enumerate_conic_classes, is_conic
from ..dimer import (
    DimerModel,
    characteristic_polygon,
    find_rcharge,
    from_json,
    isoradial_zigzag_check,
    rcharge_verify,
    validate,
)
from ..toric import (
    Cone,
    LatticePolygon,
    class_group,
    classes_equal,
    cone_from_polygon,
    is_reflexive,
    unimodular_equivalent,
)

REFLEXIVE_TYPES = (
    "3a", "4a", "4b", "4c", "5a", "5b", "6a", "6b", "6c", "6d", "7a", "7b", "8a", "8b", "8c", "9a",
)
EXAMPLES = ("conifold", "hexagon")
TYPE_IDS = REFLEXIVE_TYPES + EXAMPLES


@dataclass(frozen=True)
class MCMClass:
    u: tuple[int, ...]
    conic: bool
    isoradial: bool  # arises from the type's isoradial dimer model


@dataclass(frozen=True)
class Witness:
    u: tuple[int, ...]
    y: tuple[Fraction, ...]


@dataclass(frozen=True)
class Relation:
    vector: tuple[int, ...]
    text: str


@dataclass
class BundledDimer:
    name: str
    model: DimerModel
    isoradial_claim: bool

    @property
    def printed_rcharge(self) -> Optional[dict[int, Fraction]]:
        return self.model.rcharge


@dataclass
class CaseRecord:
    type_id: str
    polygon: LatticePolygon
    cone: Cone
    simplicial: bool
    class_group_claim: Optional[tuple[int, tuple[int, ...]]]
    representative: Optional[str]
    free_slots: tuple[int, ...]
    relations: list[Relation]
    mcm_classes: list[MCMClass]
    witnesses: list[Witness]
    nonconic_listed: list[tuple[int, ...]]
    dimers: list[BundledDimer]
    dimer_count_claim: Optional[int]
    isoradial_count_claim: Optional[int]
    provenance: dict[str, str] = field(default_factory=dict)


def _data_dir() -> Path:
    override = os.environ.get("TORICD_ATLAS_DIR")
    if override:
        return Path(override)
    return Path(str(resources.files(__package__) / "data"))


def _read(path: Path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _parse(raw: dict, base: Path) -> CaseRecord:
    tid = raw["type"]
    poly = LatticePolygon(tuple(tuple(p) for p in raw["polygon"]))
    prov = {"polygon": raw.get("polygon_source", "")}
    cg = raw.get("class_group")
    claim = None
    if cg:
        claim = (cg["rank"], tuple(cg["torsion"]))
        prov["class_group"] = cg["source"]
    rep = raw.get("representative") or {}
    if rep:
        prov["representative"] = rep["source"]
    rels = [Relation(tuple(r["vector"]), r["text"]) for r in raw.get("relations", [])]
    if rels:
        prov["relations"] = raw["relations"][0]["source"]
    mcm = [MCMClass(tuple(m["u"]), m["conic"], m["isoradial"]) for m in raw.get("mcm", [])]
    if raw.get("mcm_expand_duals"):
        seen = {m.u for m in mcm}
        for m in list(mcm):
            du = dual_coords(m.u)
            if du not in seen:
                seen.add(du)
                mcm.append(MCMClass(du, m.conic, m.isoradial))
    if "mcm_source" in raw:
        prov["mcm_classes"] = raw["mcm_source"]
    wits = [Witness(tuple(w["u"]), tuple(Fraction(x) for x in w["y"])) for w in raw.get("witnesses", [])]
    if wits:
        prov["witnesses"] = raw["witness_source"]
    nonconic = [tuple(u) for u in raw.get("nonconic_listed", [])]
    if nonconic:
        prov["nonconic_listed"] = raw["nonconic_source"]
    dimers = []
    for dm in raw.get("dimers", []):
        model = from_json(_read(base / "dimers" / dm["file"]))
        name = dm["file"].rsplit(".", 1)[0]
        dimers.append(BundledDimer(name, model, dm["isoradial_claim"]))
        prov[f"dimer:{name}"] = dm["source"]
    if "counts_source" in raw:
        prov["dimer_counts"] = raw["counts_source"]
    return CaseRecord(
        type_id=tid,
        polygon=poly,
        cone=cone_from_polygon(poly),
        simplicial=raw.get("simplicial", False),
        class_group_claim=claim,
        representative=rep.get("text"),
        free_slots=tuple(rep.get("free_slots", ())),
        relations=rels,
        mcm_classes=mcm,
        witnesses=wits,
        nonconic_listed=nonconic,
        dimers=dimers,
        dimer_count_claim=raw.get("dimer_count_claim"),
        isoradial_count_claim=raw.get("isoradial_count_claim"),
        provenance=prov,
    )


@lru_cache(maxsize=None)
def _load_cached(type_id: str, base: str) -> CaseRecord:
    path = Path(base) / "types" / f"{type_id}.json"
    return _parse(_read(path), Path(base))


def load(type_id: str) -> CaseRecord:
    if type_id not in TYPE_IDS:
        raise KeyError(f"unknown type id {type_id!r}; known: {', '.join(TYPE_IDS)}")
    return _load_cached(type_id, str(_data_dir()))


def list_types() -> tuple[str, ...]:
    return TYPE_IDS


def classify(p: LatticePolygon) -> list[str]:
    """Reflexive types whose polygon is unimodular-equivalent to p."""
    return [t for t in REFLEXIVE_TYPES if unimodular_equivalent(p, load(t).polygon) is not None]


# verification


@dataclass(frozen=True)
class Check:
    name: str
    status: str  # "pass", "fail" or "skip"
    detail: str = ""


@dataclass
class VerificationReport:
    type_id: str
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == "fail"]

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(Check(name, "pass" if passed else "fail", detail))

    def skip(self, name: str, detail: str = "") -> None:
        self.checks.append(Check(name, "skip", detail))


def _fmt(u: Iterable[int]) -> str:
    return "T(" + ",".join(str(x) for x in u) + ")"


def _frac(y: Iterable[Fraction]) -> str:
    return "(" + ",".join(str(x) for x in y) + ")"


def verify_record(rec: CaseRecord) -> VerificationReport:
    rep = VerificationReport(rec.type_id)
    c = rec.cone

    # (a) polygon
    if rec.type_id in REFLEXIVE_TYPES:
        rep.add("reflexive", is_reflexive(rec.polygon))
        found = classify(rec.polygon)
        rep.add("classification", found == [rec.type_id], f"matches {found}")
    else:
        rep.skip("reflexive", "example polygon, not a reflexive type")

    # (b) class group
    cg = class_group(c)
    computed = (cg.rank, cg.torsion)
    if rec.class_group_claim is not None:
        rep.add("class group", computed == rec.class_group_claim, f"computed {computed}, claimed {rec.class_group_claim}")

    # (c) relations
    for r in rec.relations:
        rep.add(f"relation {r.text}", classes_equal(c, r.vector, [0] * c.n))

    # (d) witnesses
    mcm_conic = {m.u for m in rec.mcm_classes if m.conic}
    for w in rec.witnesses:
        got = ceil_lambda(c, w.y)
        rep.add(f"witness {_fmt(w.u)} = T(lambda{_frac(w.y)})", classes_equal(c, got, w.u), f"ceil(lambda(y)) = {got}")
    if rec.witnesses:
        missing = [w.u for w in rec.witnesses if w.u not in mcm_conic]
        rep.add("witnesses listed as conic MCM classes", not missing, f"missing {missing}" if missing else "")

    # (e) conic flags
    for m in rec.mcm_classes:
        v = is_conic(c, m.u)
        want = "conic" if m.conic else "not conic"
        rep.add(f"{want} {_fmt(m.u)}", v.conic == m.conic, f"witness {_frac(v.witness)}" if v.witness else "")
    for u in rec.nonconic_listed:
        rep.add(f"listed non-conic {_fmt(u)}", not is_conic(c, u).conic)
    if rec.simplicial:
        allc = enumerate_conic_classes(c) == frozenset(cg.elements())
        rep.add("simplicial: every class conic", allc, f"|Cl| = {cg.order()}")

    # (f) dimers
    if not rec.dimers:
        rep.skip("dimer models", "no drawn dimer model bundled")
    for bd in rec.dimers:
        d, tag = bd.model, f"dimer {bd.name}"
        msg = validate(d)
        rep.add(f"{tag}: valid", msg is None, msg or "")
        if msg is not None:
            continue
        if bd.printed_rcharge is not None:
            r = rcharge_verify(d, bd.printed_rcharge, isoradial=bd.isoradial_claim)
            rep.add(f"{tag}: printed R-charge consistent", r.ok, "; ".join(r.failures))
        R = find_rcharge(d, isoradial=True)
        rep.add(f"{tag}: isoradial R-charge found", (R is not None) == bd.isoradial_claim)
        zz = isoradial_zigzag_check(d)
        rep.add(f"{tag}: zig-zag criterion agrees", zz == (R is not None))
        P = characteristic_polygon(d)
        rep.add(
            f"{tag}: characteristic polygon",
            unimodular_equivalent(P, rec.polygon) is not None,
            f"hull {list(P.vertices)}",
        )

    # (g) isoradial-dimer classes are conic
    if any(bd.isoradial_claim for bd in rec.dimers) and rec.mcm_classes:
        bad = [m.u for m in rec.mcm_classes if m.isoradial and not is_conic(c, m.u).conic]
        rep.add("isoradial dimer classes all conic", not bad, f"non-conic {bad}" if bad else "")
    extra = [m.u for m in rec.mcm_classes if m.conic and not m.isoradial]
    for u in extra:
        rep.add(f"remark: {_fmt(u)} conic though not from the isoradial dimer", is_conic(c, u).conic)
    return rep


def verify(type_id: str) -> VerificationReport:
    return verify_record(load(type_id))


def verify_all(types: Optional[Iterable[str]] = None) -> list[VerificationReport]:
    ids = list(types) if types else list(TYPE_IDS)
    return [verify(t) for t in ids]


def export(dest: Path) -> list[Path]:
    """Copy the atlas data files to dest (types/ and dimers/ subdirectories)."""
    src = _data_dir()
    out = []
    for sub in ("types", "dimers"):
        (dest / sub).mkdir(parents=True, exist_ok=True)
        for f in sorted((src / sub).glob("*.json")):
            target = dest / sub / f.name
            target.write_text(f.read_text(encoding="utf-8"), encoding="utf-8")
            out.append(target)
    return out


def polygon_svg(p: LatticePolygon, scale: int = 40) -> str:
    xs = [v[0] for v in p.vertices]
    ys = [v[1] for v in p.vertices]
    x0, y1 = min(xs) - 1, max(ys) + 1
    w, h = (max(xs) - min(xs) + 2) * scale, (max(ys) - min(ys) + 2) * scale

    def tr(x, y):
        return (x - x0) * scale, (y1 - y) * scale

    pts = " ".join(f"{a},{b}" for a, b in (tr(*v) for v in p.vertices))
    dots = "".join(
        f'<circle cx="{a}" cy="{b}" r="3" fill="black"/>' for a, b in (tr(*q) for q in p.lattice_points())
    )
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}">'
        f'<polygon points="{pts}" fill="#dde" stroke="black"/>{dots}</svg>\n'
    )
