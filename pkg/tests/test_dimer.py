import json
import random
from collections import Counter
from fractions import Fraction
from itertools import combinations
from math import gcd
from pathlib import Path

import pytest

import toricd
from toricd.dimer import (
    DimerModel,
    Edge,
    characteristic_polygon,
    dual_quiver,
    find_rcharge,
    from_json,
    hexagon_model,
    isoradial_zigzag_check,
    perfect_matchings,
    rcharge_verify,
    to_json,
    trace_faces,
    validate,
    zigzags,
)
from toricd.dimer.model import format_rational, parse_rational
from toricd.dimer.quiver import quiver_from_json, quiver_to_json
from toricd.dimer.random import add_digon, honeycomb, random_model
from toricd.toric import LatticePolygon, unimodular_equivalent

DIMER_DIR = Path(toricd.__file__).parent / "atlas" / "data" / "dimers"
NAMES = sorted(p.stem for p in DIMER_DIR.glob("*.json"))


def load(name):
    return from_json(json.loads((DIMER_DIR / f"{name}.json").read_text()))


def digon_model():
    return add_digon(load("conifold"), 0)


def brute_matchings(d):
    """Edge subsets of size V/2 covering every vertex."""
    V = len(d.colors)
    out = []
    for es in combinations(sorted(d.edges), V // 2):
        hit = Counter()
        for e in es:
            hit[d.edges[e].black] += 1
            hit[d.edges[e].white] += 1
        if len(hit) == V and set(hit.values()) == {1}:
            out.append(frozenset(es))
    return out


def test_bundled_set():
    assert NAMES == ["4a", "5a", "6a", "6b-1", "6b-2", "6c", "7a", "8a", "8b", "conifold", "hexagon"]


@pytest.mark.parametrize("name", NAMES)
def test_bundled_validate(name):
    assert validate(load(name)) is None


def test_hexagon_builder_matches_file():
    d = hexagon_model()
    assert validate(d) is None
    assert len(d.edges) == 3 and len(trace_faces(d)) == 1


def test_validation_messages():
    bad = DimerModel({0: "black", 1: "black"}, {0: Edge(0, 0, 1, (0, 0))}, {0: (0,), 1: (0,)})
    assert "not bipartite" in validate(bad)
    sphere = DimerModel(
        {0: "black", 1: "white"},
        {0: Edge(0, 0, 1, (0, 0)), 1: Edge(1, 0, 1, (0, 0))},
        {0: (0, 1), 1: (0, 1)},
    )
    assert "not a torus decomposition" in validate(sphere)


def test_from_json_positions():
    raw = json.loads((DIMER_DIR / "conifold.json").read_text())
    raw["edges"][2]["offset"] = [0, "x"]
    with pytest.raises(ValueError, match=r"\$\.edges\[2\]\.offset"):
        from_json(raw)


@pytest.mark.parametrize("name", NAMES)
def test_json_roundtrip(name):
    d = load(name)
    assert from_json(json.loads(json.dumps(to_json(d)))) == d


def test_rationals():
    assert parse_rational("2/3") == Fraction(2, 3)
    assert parse_rational(1) == 1
    assert format_rational(Fraction(1, 2)) == "1/2"
    with pytest.raises(ValueError):
        parse_rational("0.5.1")


@pytest.mark.parametrize(
    "name,nv,na,face_lengths",
    [("conifold", 2, 4, [4, 4]), ("hexagon", 1, 3, [3, 3]), ("4a", 4, 8, [4, 4, 4, 4])],
)
def test_quiver_counts(name, nv, na, face_lengths):
    q = dual_quiver(load(name))
    assert len(q.vertices) == nv and len(q.arrows) == na
    assert sorted(len(f.arrows) for f in q.faces) == face_lengths


@pytest.mark.parametrize("name", NAMES)
def test_quiver_faces_are_cycles_and_roundtrip(name):
    q = dual_quiver(load(name))
    for f in q.faces:
        k = len(f.arrows)
        assert all(q.head(f.arrows[i]) == q.tail(f.arrows[(i + 1) % k]) for i in range(k))
    # every arrow lies on exactly one black and one white face
    colors = Counter((a, f.color) for f in q.faces for a in f.arrows)
    assert all(colors[(a, c)] == 1 for a in q.arrows for c in ("black", "white"))
    assert quiver_from_json(json.loads(json.dumps(quiver_to_json(q)))) == q


def test_rcharge_examples():
    hexm = load("hexagon")
    assert rcharge_verify(hexm, {a: Fraction(2, 3) for a in hexm.edges}, isoradial=True).isoradial
    m4 = load("4a")
    assert rcharge_verify(m4, {a: Fraction(1, 2) for a in m4.edges}, isoradial=True).isoradial
    con = load("conifold")
    rep = rcharge_verify(con, {a: Fraction(3, 4) for a in con.edges})
    assert not rep.ok and any("expected 2" in f for f in rep.failures)
    with pytest.raises(ValueError):
        rcharge_verify(con, {0: Fraction(1, 2)})


def test_consistent_but_not_isoradial():
    rng = random.Random(3)
    for _ in range(200):
        d = random_model(rng, max_edges=14)
        R = find_rcharge(d)
        if R is not None and find_rcharge(d, isoradial=True) is None:
            rep = rcharge_verify(d, R)
            assert rep.ok and not rep.isoradial
            assert not rcharge_verify(d, R, isoradial=True).ok
            return
    pytest.fail("no consistent non-isoradial model sampled")


@pytest.mark.parametrize("name", NAMES)
def test_printed_rcharges_and_search(name):
    d = load(name)
    if d.rcharge is not None:
        assert rcharge_verify(d, d.rcharge, isoradial=True).isoradial
    for iso in (False, True):
        R = find_rcharge(d, isoradial=iso)
        assert R is not None
        rep = rcharge_verify(d, R, isoradial=iso)
        assert rep.ok and (rep.isoradial or not iso)


def test_digon_counterexample():
    d = digon_model()
    assert validate(d) is None
    assert find_rcharge(d) is None
    assert find_rcharge(d, isoradial=True) is None
    assert not isoradial_zigzag_check(d)
    assert any(len(set(z.edges)) < len(z.edges) for z in zigzags(d))


def test_zigzag_examples():
    zc = zigzags(load("conifold"))
    assert len(zc) == 4 and all(len(z.edges) == 2 for z in zc)
    zh = zigzags(load("hexagon"))
    assert len(zh) == 3 and len({z.homology for z in zh}) == 3


@pytest.mark.parametrize("name", NAMES)
def test_zigzag_homology(name):
    d = load(name)
    zs = zigzags(d)
    assert tuple(map(sum, zip(*(z.homology for z in zs)))) == (0, 0)
    # each edge is traversed by exactly two zig-zags (once in each direction)
    assert Counter(e for z in zs for e in z.edges) == Counter({e: 2 for e in d.edges})
    # zig-zag classes are the primitive edge vectors of the matching polygon
    poly = characteristic_polygon(d)
    sides = []
    for a, b in poly.edges():
        dx, dy = b[0] - a[0], b[1] - a[1]
        g = gcd(dx, dy)
        sides += [(dx // g, dy // g)] * g
    assert sorted(z.homology for z in zs) == sorted(sides)
    assert isoradial_zigzag_check(d)


@pytest.mark.parametrize("name,count", [("hexagon", 3), ("conifold", 4)])
def test_matching_counts(name, count):
    assert len(perfect_matchings(load(name))) == count


@pytest.mark.parametrize("name", NAMES)
def test_matchings_against_brute_force(name):
    d = load(name)
    assert set(perfect_matchings(d)) == set(brute_matchings(d))


def test_matching_limit():
    with pytest.raises(ValueError):
        perfect_matchings(honeycomb(3, 3), limit=24)


def test_characteristic_polygons_of_examples():
    sq = LatticePolygon(((0, 0), (1, 0), (1, 1), (0, 1)))
    tri = LatticePolygon(((0, 0), (1, 0), (0, 1)))
    assert unimodular_equivalent(characteristic_polygon(load("conifold")), sq)
    assert unimodular_equivalent(characteristic_polygon(load("hexagon")), tri)


def test_characteristic_polygon_reference_independent():
    d = load("6c")
    base = characteristic_polygon(d)
    for m in perfect_matchings(d)[:6]:
        assert unimodular_equivalent(characteristic_polygon(d, reference=m), base) is not None


def test_lp_and_zigzag_agree_on_random_models():
    rng = random.Random(99)
    seen = Counter()
    for _ in range(20):
        d = random_model(rng, max_edges=14)
        iso = find_rcharge(d, isoradial=True) is not None
        assert iso == isoradial_zigzag_check(d)
        seen[iso] += 1
        if iso:
            assert find_rcharge(d) is not None
    assert seen[True] and seen[False]
