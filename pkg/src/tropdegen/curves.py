"""Dual graphs of semistable curves: cycle space, length pairing, Jacobian, j-invariant."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InvalidGraph, NoCycles, NotACycle, NotGenusOneMultiplicative
from .homology import ChainComplex
from .lattice import det
from .spectral import MonodromyFiltration, SSPage, e1_from_strata, monodromy_filtration


@dataclass(frozen=True)
class Edge:
    tail: int
    head: int
    length: Fraction

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head


class DualGraphCurve:
    """A connected metric multigraph with a genus on each vertex."""

    def __init__(self, genera: Sequence[int], edges: Sequence[tuple[int, int, object]]):
        self.genera = tuple(int(g) for g in genera)
        if not self.genera:
            raise InvalidGraph("a dual graph needs at least one vertex")
        if any(g < 0 for g in self.genera):
            raise InvalidGraph("vertex genera must be nonnegative")
        es = []
        for k, (a, b, l) in enumerate(edges):
            l = Fraction(l)
            if l <= 0:
                raise InvalidGraph(f"edge {k} has nonpositive length {l}", edge=k)
            if not (0 <= a < len(self.genera) and 0 <= b < len(self.genera)):
                raise InvalidGraph(f"edge {k} has an endpoint outside the vertex list", edge=k)
            es.append(Edge(int(a), int(b), l))
        self.edges = tuple(es)
        if len(self._component(0)) != len(self.genera):
            raise InvalidGraph("the dual graph is not connected")

    def _component(self, start):
        adj = {v: [] for v in range(len(self.genera))}
        for e in self.edges:
            adj[e.tail].append(e.head)
            adj[e.head].append(e.tail)
        seen = {start}
        todo = deque([start])
        while todo:
            v = todo.popleft()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return seen

    @property
    def n_vertices(self) -> int:
        return len(self.genera)

    @property
    def b1(self) -> int:
        return len(self.edges) - self.n_vertices + 1

    @property
    def total_vertex_genus(self) -> int:
        return sum(self.genera)

    @property
    def genus(self) -> int:
        """Arithmetic genus: sum of vertex genera plus the first Betti number."""
        return self.total_vertex_genus + self.b1

    def incidence(self) -> list[list[int]]:
        """Boundary matrix C_1 -> C_0, edge (a -> b) |-> b - a."""
        M = [[0] * len(self.edges) for _ in self.genera]
        for k, e in enumerate(self.edges):
            M[e.head][k] += 1
            M[e.tail][k] -= 1
        return M

    def chain_complex(self) -> ChainComplex:
        sizes = {0: self.n_vertices, 1: len(self.edges)}
        return ChainComplex(sizes, {1: self.incidence()} if self.edges else {})

    def is_cycle(self, z: Sequence) -> bool:
        M = self.incidence()
        return all(sum(row[k] * z[k] for k in range(len(z))) == 0 for row in M)

    def subdivide(self, edge: int, t=Fraction(1, 2)) -> tuple["DualGraphCurve", int]:
        """Insert a genus-0 vertex on an edge, splitting its length as t : 1 - t.

        Returns the new graph and the index of the second half (the first half
        keeps the original index).
        """
        t = Fraction(t)
        e = self.edges[edge]
        v = self.n_vertices
        edges = [(x.tail, x.head, x.length) for x in self.edges]
        edges[edge] = (e.tail, v, e.length * t)
        edges.append((v, e.head, e.length * (1 - t)))
        return DualGraphCurve(self.genera + (0,), edges), len(edges) - 1


def cycle_basis(G: DualGraphCurve) -> list[list[int]]:
    """Integral basis of H_1(G, Z) as edge-coefficient vectors.

    Non-tree edges are processed in order. Each gives the cycle
    (tree path tail -> head) - e, after which e replaces the path edge at its
    head in the tree; loops give the cycle e.
    """
    m = len(G.edges)
    tree: set[int] = set()
    seen = {0}
    todo = deque([0])
    while todo:
        v = todo.popleft()
        for k, e in enumerate(G.edges):
            if e.is_loop:
                continue
            for a, b in ((e.tail, e.head), (e.head, e.tail)):
                if a == v and b not in seen:
                    seen.add(b)
                    tree.add(k)
                    todo.append(b)
    basis = []
    for k in [k for k in range(m) if k not in tree]:
        e = G.edges[k]
        z = [0] * m
        if e.is_loop:
            z[k] = 1
            basis.append(z)
            continue
        path = _tree_path(G, tree, e.tail, e.head)
        for edge_id, sign in path:
            z[edge_id] += sign
        z[k] -= 1
        basis.append(z)
        tree.discard(path[-1][0])
        tree.add(k)
    return basis


def _tree_path(G, tree, start, goal):
    """Signed edges of the tree path start -> goal."""
    prev = {start: None}
    todo = deque([start])
    while todo:
        v = todo.popleft()
        if v == goal:
            break
        for k in sorted(tree):
            e = G.edges[k]
            for a, b, sgn in ((e.tail, e.head, 1), (e.head, e.tail, -1)):
                if a == v and b not in prev:
                    prev[b] = (v, k, sgn)
                    todo.append(b)
    path = []
    v = goal
    while prev[v] is not None:
        u, k, sgn = prev[v]
        path.append((k, sgn))
        v = u
    return path[::-1]


def length_pairing(G: DualGraphCurve, z1: Sequence, z2: Sequence) -> Fraction:
    for z in (z1, z2):
        if len(z) != len(G.edges):
            raise ValueError(f"chain has {len(z)} coefficients, expected {len(G.edges)}")
        if not G.is_cycle(z):
            raise NotACycle("chain is not a cycle", chain=list(z))
    return sum((Fraction(a) * b * e.length for a, b, e in zip(z1, z2, G.edges)), Fraction(0))


def gram_matrix(G: DualGraphCurve, basis: Sequence[Sequence[int]] | None = None) -> list[list[Fraction]]:
    basis = cycle_basis(G) if basis is None else basis
    return [[length_pairing(G, a, b) for b in basis] for a in basis]


def is_positive_definite(Q: Sequence[Sequence]) -> bool:
    """Sylvester's criterion on leading principal minors."""
    return all(det([row[:k] for row in Q[:k]]) > 0 for k in range(1, len(Q) + 1))


@dataclass
class TropicalJacobian:
    """R^g / Q Z^g, where Q is the Gram matrix of the length pairing on H_1."""

    cycle_basis: list[list[int]]
    gram: list[list[Fraction]]
    positive_definite: bool

    @property
    def dimension(self) -> int:
        return len(self.gram)

    @property
    def volume(self) -> Fraction:
        return Fraction(det(self.gram))


def tropical_jacobian(G: DualGraphCurve) -> TropicalJacobian:
    if G.b1 == 0:
        raise NoCycles("the graph is a tree: its tropical Jacobian is a point")
    basis = cycle_basis(G)
    Q = gram_matrix(G, basis)
    pd = is_positive_definite(Q)
    if not pd:  # pragma: no cover - impossible for an independent cycle basis
        raise AssertionError("length pairing Gram matrix is not positive definite")
    return TropicalJacobian(basis, Q, pd)


def val_j(G: DualGraphCurve) -> Fraction:
    """Valuation of the j-invariant of a genus-one curve with multiplicative reduction: minus the cycle length."""
    if G.b1 != 1 or G.total_vertex_genus != 0:
        raise NotGenusOneMultiplicative(
            f"need exactly one cycle and genus-0 vertices, got b1 = {G.b1} and vertex genus {G.total_vertex_genus}",
            b1=G.b1, vertex_genus=G.total_vertex_genus)
    (z,) = cycle_basis(G)
    return -length_pairing(G, z, z)


@dataclass
class CurveReport:
    page: SSPage
    graded_h1: tuple[int, int, int]  # (E_2^{1,0}, E_2^{0,1}, E_2^{-1,2})
    total_h1: int
    cycle_basis: list[list[int]]
    gram: list[list[Fraction]]
    filtration: MonodromyFiltration
    betti_gamma: tuple[int, int, int]
    betti_x: tuple[int, int, int]
    euler_rows_agree: bool


def curve_page(G: DualGraphCurve) -> SSPage:
    counts = {0: G.n_vertices, 1: len(G.edges)}
    page = e1_from_strata(1, counts, {(0, 1): 2 * G.total_vertex_genus})
    if G.edges:
        delta = [list(col) for col in zip(*G.incidence())]  # restriction C^0 -> C^1
        page.differentials[(0, 0)] = delta
        page.differentials[(2, -1)] = G.incidence()  # Gysin C_1 -> C_0
    return page


def curve_ss(G: DualGraphCurve) -> CurveReport:
    page = curve_page(G)
    bottom = page.e2_row(0)
    top = page.e2_row(2)
    p0 = page.d  # position of p = 0 in a row tuple
    graded = (bottom[p0 + 1], page.dim(0, 1), top[p0 - 1])
    basis = cycle_basis(G)
    Q = gram_matrix(G, basis)
    blocks = [2] * G.b1 + [1] * (2 * G.total_vertex_genus)
    filt = monodromy_filtration(blocks)
    euler_ok = all(page.euler_row(q, 1) == page.euler_row(q, 2) for q in (0, 2))
    return CurveReport(page, graded, sum(graded), basis, Q, filt,
                       (1, G.b1, 0), (1, 2 * G.genus, 1), euler_ok)


@dataclass(frozen=True)
class BoundCheck:
    r: int
    b_gamma: int
    b_x: int
    bound: Fraction
    ok: bool


def betti_bound_check(b_gamma: Sequence[int], b_x: Sequence[int]) -> list[BoundCheck]:
    """Per degree r: b_r(Gamma) <= b_r(X) / (r + 1)."""
    if len(b_gamma) != len(b_x):
        raise ValueError("Betti sequences must have the same length")
    out = []
    for r, (g, x) in enumerate(zip(b_gamma, b_x)):
        bound = Fraction(int(x), r + 1)
        out.append(BoundCheck(r, int(g), int(x), bound, int(g) <= bound))
    return out
