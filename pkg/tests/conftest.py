from __future__ import annotations

import json
import random
from fractions import Fraction as Q
from pathlib import Path

import pytest
from sympy import Matrix, eye

from tropdegen.curves import DualGraphCurve
from tropdegen.gamma import GammaCover
from tropdegen.polyhedra import Polyhedron, cone, make_complex
from tropdegen.tropical import ValuedPolynomial

DATA = Path(__file__).parent / "data"


def load(name):
    return json.loads((DATA / name).read_text())


def P(vertices, rays=()):
    return Polyhedron(vertices, rays)


def corpus():
    """Twenty small complexes: bounded, unbounded, rational, non-unimodular."""
    h = Q(1, 2)
    third = Q(1, 3)
    cx = {
        "point": [P([(0, 0)])],
        "segment": [P([(0,), (3,)])],
        "complete_R1": [P([(0,)], [(1,)]), P([(0,)], [(-1,)])],
        "unit_triangle": [P([(0, 0), (1, 0), (0, 1)])],
        "big_triangle": [P([(0, 0), (2, 0), (0, 2)])],
        "half_triangle": [P([(0, 0), (h, 0), (0, h)])],
        "square": [P([(0, 0), (1, 0), (0, 1), (1, 1)])],
        "two_squares": [P([(0, 0), (1, 0), (0, 1), (1, 1)]), P([(1, 0), (2, 0), (1, 1), (2, 1)])],
        "thin_triangle": [P([(0, 0), (1, 0), (1, 3)])],
        "tropical_line": [P([(0, 0)], [(1, 0)]), P([(0, 0)], [(0, 1)]), P([(0, 0)], [(-1, -1)])],
        "cone13": [cone([(1, 0), (1, 3)])],
        "cone15": [cone([(1, 0), (1, 5)])],
        "strip": [P([(0, 0), (1, 0)], [(0, 1)])],
        "shifted_quadrant": [P([(third, 0)], [(1, 0), (0, 1)])],
        "rational_path": [P([(0,), (h,)]), P([(h,), (Q(5, 3),)])],
        "lopsided_quad": [P([(0, 0), (2, 0), (0, 1), (1, 3)])],
        "fan_2d": [cone([(1, 0), (0, 1)]), cone([(0, 1), (-1, -1)]), cone([(-1, -1), (1, 0)])],
        "tetrahedron": [P([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 2)])],
        "prism_cone": [P([(0, 0, 0), (1, 0, 0), (0, 1, 0)], [(0, 0, 1)])],
        "tropical_conic": [P([(0, 0), (1, 1)]), P([(0, 0)], [(-1, 0)]), P([(0, 0)], [(0, -1)]),
                           P([(1, 1)], [(1, 0)]), P([(1, 1)], [(0, 1)])],
    }
    return {k: make_complex(v) for k, v in cx.items()}


@pytest.fixture(scope="session")
def complex_corpus():
    return corpus()


def random_cover(rng: random.Random, base, max_sheets=3):
    """A random cover of ``base``: each cell partitions a sheet set, faces coarser.

    Cells are visited by increasing dimension; a cell's partition refines
    the common refinement of its faces' partitions, which makes composed
    facet assignments path independent.
    """
    k = rng.randint(1, max_sheets)
    sheets = list(range(k))
    label_of = {}  # cell -> sheet -> class label
    order = sorted(range(len(base)), key=lambda i: base.cells[i].dim)
    for i in order:
        faces = [f for f in base.faces_of[i] if f != i]
        key = {s: tuple(label_of[f][s] for f in faces) for s in sheets}
        classes = {}
        for s in sheets:
            classes.setdefault(key[s], []).append(s)
        lab = {}
        n = 0
        for members in classes.values():
            rng.shuffle(members)
            cut = rng.randint(1, len(members))
            for t, s in enumerate(members):
                lab[s] = f"c{n + (t >= cut)}"
            n += 2
        label_of[i] = lab
    comps = {i: tuple(sorted(set(label_of[i].values()))) for i in range(len(base))}
    assign = {}
    for i in range(len(base)):
        for F in base.facets_of[i]:
            for s in sheets:
                assign[(i, label_of[i][s], F)] = label_of[F][s]
    top = base.cells_of_dim(base.dim)
    weights = {i: len(comps[i]) for i in top}
    return GammaCover(base, weights, comps, assign)


def random_simplicial_complex(rng: random.Random, size=3):
    """A random pure 2-dimensional subcomplex of the standard triangulated grid."""
    tris = []
    for x in range(size):
        for y in range(size):
            tris.append([(x, y), (x + 1, y), (x, y + 1)])
            tris.append([(x + 1, y), (x + 1, y + 1), (x, y + 1)])
    chosen = rng.sample(tris, rng.randint(1, len(tris)))
    if rng.random() < 0.3:
        # a one-dimensional example: the edges of the chosen triangles
        edges = {tuple(sorted((a, b))) for t in chosen for a, b in ((t[0], t[1]), (t[1], t[2]), (t[0], t[2]))}
        edges = rng.sample(sorted(edges), rng.randint(1, len(edges)))
        return make_complex([P(list(e)) for e in edges])
    return make_complex([P(t) for t in chosen])


def idx(cx, *verts, rays=()):
    want = P(list(verts), list(rays))
    return cx.index[want]


def segment_cover(points, sheets):
    """Cover of a subdivided segment: ``sheets[k]`` names the components over edge k; vertices get one
    component unless both neighbouring edges agree on several."""
    cx = make_complex([P([(a,), (b,)]) for a, b in zip(points, points[1:])])
    comps, assign = {}, {}
    for k, (a, b) in enumerate(zip(points, points[1:])):
        comps[idx(cx, (a,), (b,))] = tuple(sheets[k])
    for j, p in enumerate(points):
        near = [sheets[k] for k in (j - 1, j) if 0 <= k < len(sheets)]
        shared = set(near[0]).intersection(*near[1:]) if len(near) > 1 else set()
        comps[idx(cx, (p,))] = tuple(sorted(shared)) if len(shared) > 1 else ("v",)
    for k, (a, b) in enumerate(zip(points, points[1:])):
        e = idx(cx, (a,), (b,))
        for v in (idx(cx, (a,)), idx(cx, (b,))):
            for Y in comps[e]:
                assign[(e, Y, v)] = Y if Y in comps[v] else comps[v][0]
    weights = {i: len(comps[i]) for i in cx.cells_of_dim(1)}
    return GammaCover(cx, weights, comps, assign)


def random_poly(rng, n=2, max_terms=6, box=3):
    k = rng.randint(2, max_terms)
    exps = set()
    while len(exps) < k:
        exps.add(tuple(rng.randint(0, box) for _ in range(n)))
    return ValuedPolynomial.from_pairs([(a, Q(rng.randint(-6, 6), rng.randint(1, 3))) for a in sorted(exps)])


def random_graph(rng, max_vertices=5, max_genus=2):
    n = rng.randint(1, max_vertices)
    edges = [(v, rng.randrange(v), Q(rng.randint(1, 9), rng.randint(1, 3))) for v in range(1, n)]  # spanning tree
    for _ in range(rng.randint(0, 4)):
        a, b = rng.randrange(n), rng.randrange(n)
        edges.append((a, b, Q(rng.randint(1, 9), rng.randint(1, 3))))
    genera = [rng.randint(0, max_genus) if rng.random() < 0.4 else 0 for _ in range(n)]
    return DualGraphCurve(genera, edges)


def random_unimodular(rng, n):
    """A random integer matrix of determinant ±1, as a product of elementary moves."""
    S = eye(n)
    for _ in range(3 * n):
        if n < 2:
            break
        a, b = rng.sample(range(n), 2)
        E = eye(n)
        E[a, b] = rng.choice([-1, 1])
        S = E * S
    return [[int(x) for x in row] for row in S.tolist()]


def deligne_filtration(N, k):
    """M_k = sum over j >= max(0, -k) of ker N^(k+j+1) ∩ im N^j."""
    n = N.shape[0]
    pieces = []
    for j in range(max(0, -k), n + 1):
        if k + j + 1 < 0:
            continue
        K = (N ** (k + j + 1)).nullspace() if k + j + 1 > 0 else []
        I = (N ** j).columnspace() if j > 0 else [eye(n)[:, t] for t in range(n)]
        if not K or not I:
            continue
        Km = Matrix.hstack(*K)
        Im = Matrix.hstack(*I)
        # intersection of column spaces: solve Km x = Im y
        for v in Matrix.hstack(Km, -Im).nullspace():
            pieces.append(Km * v[:Km.shape[1], :])
    if not pieces:
        return 0
    return Matrix.hstack(*pieces).rank()
