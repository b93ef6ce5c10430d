"""Random small dimer models for property tests."""

from __future__ import annotations

import random as _random
from dataclasses import replace

from .model import BLACK, WHITE, DimerModel, Edge, validate


def honeycomb(p: int, q: int) -> DimerModel:
    """Hexagonal tiling with a p x q block of fundamental hexagons per period."""
    colors, edges, rot = {}, {}, {}

    def b(i, j):
        return 2 * ((i % p) * q + (j % q))

    def w(i, j):
        return b(i, j) + 1

    for i in range(p):
        for j in range(q):
            colors[b(i, j)] = BLACK
            colors[w(i, j)] = WHITE
    for i in range(p):
        for j in range(q):
            k = 3 * (i * q + j)
            edges[k] = Edge(k, b(i, j), w(i, j), (0, 0))
            edges[k + 1] = Edge(k + 1, b(i, j), w(i + 1, j), (int(i + 1 == p), 0))
            edges[k + 2] = Edge(k + 2, b(i, j), w(i, j + 1), (0, int(j + 1 == q)))
            rot[b(i, j)] = (k, k + 1, k + 2)
    for i in range(p):
        for j in range(q):
            k0 = 3 * (i * q + j)
            k1 = 3 * (((i - 1) % p) * q + j) + 1
            k2 = 3 * (i * q + (j - 1) % q) + 2
            rot[w(i, j)] = (k0, k1, k2)
    return DimerModel(colors, edges, rot)


def remove_edge(d: DimerModel, e: int) -> DimerModel:
    edges = {k: v for k, v in d.edges.items() if k != e}
    rot = {v: tuple(x for x in r if x != e) for v, r in d.rotation.items()}
    return DimerModel(dict(d.colors), edges, rot)


def add_digon(d: DimerModel, e: int) -> DimerModel:
    """Double edge e so that the two copies bound a two-sided face."""
    ed = d.edges[e]
    new = max(d.edges) + 1
    edges = dict(d.edges)
    edges[new] = replace(ed, id=new)
    rot = dict(d.rotation)
    rb = list(rot[ed.black])
    rb.insert(rb.index(e) + 1, new)
    rw = list(rot[ed.white])
    rw.insert(rw.index(e), new)
    rot[ed.black], rot[ed.white] = tuple(rb), tuple(rw)
    return DimerModel(dict(d.colors), edges, rot)


def subdivide(d: DimerModel, e: int) -> DimerModel:
    """Replace edge b-w by the path b-w'-b'-w through two new bivalent vertices."""
    ed = d.edges[e]
    nw, nb = max(d.colors) + 1, max(d.colors) + 2
    e1, e2 = max(d.edges) + 1, max(d.edges) + 2
    colors = dict(d.colors)
    colors[nw], colors[nb] = WHITE, BLACK
    edges = dict(d.edges)
    edges[e] = Edge(e, ed.black, nw, (0, 0))
    edges[e1] = Edge(e1, nb, nw, (0, 0))
    edges[e2] = Edge(e2, nb, ed.white, ed.offset)
    rot = dict(d.rotation)
    rot[ed.white] = tuple(e2 if x == e else x for x in rot[ed.white])
    rot[nw] = (e, e1)
    rot[nb] = (e1, e2)
    return DimerModel(colors, edges, rot)


def random_model(rng: _random.Random, max_edges: int = 18) -> DimerModel:
    """A valid model from a small honeycomb by random edge removals and local moves."""
    while True:
        p, q = rng.choice([(1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (3, 1)])
        d = honeycomb(p, q)
        for _ in range(rng.randint(0, len(d.edges) // 2)):
            e = rng.choice(sorted(d.edges))
            cand = remove_edge(d, e)
            if validate(cand) is None:
                d = cand
        move = rng.random()
        if move < 0.15:
            d = add_digon(d, rng.choice(sorted(d.edges)))
        elif move < 0.3:
            d = subdivide(d, rng.choice(sorted(d.edges)))
        if validate(d) is None and len(d.edges) <= max_edges:
            return d
