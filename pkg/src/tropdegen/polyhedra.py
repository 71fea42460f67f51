"""Rational polyhedra, polyhedral complexes and fans.

Polyhedra are stored in canonical V-representation: irredundant vertices
(projected onto the orthogonal complement of the lineality space), primitive
pairwise non-parallel rays, and a reduced-echelon integer lineality basis.
Two polyhedra are equal iff their canonical generator lists agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from . import conegeom
from .errors import (BadIntersection, EmptyPolyhedron, FanNotSliceable,
                     NotClosedUnderFaces)
from .lattice import (dot, integerize, is_zero, lcm, nullspace, rank, rref,
                      solve, vscale, vsub)


def _frac_vec(v):
    return tuple(Fraction(x) for x in v)


class Polyhedron:
    """P = conv(vertices) + cone(rays) + span(lineality)."""

    __slots__ = ("ambient_dim", "vertices", "rays", "lineality", "__dict__")

    def __init__(self, vertices: Iterable[Sequence], rays: Iterable[Sequence] = (),
                 lineality: Iterable[Sequence] = (), ambient_dim: int | None = None):
        vertices = [_frac_vec(v) for v in vertices]
        if not vertices:
            raise EmptyPolyhedron("a polyhedron needs at least one vertex")
        n = len(vertices[0]) if ambient_dim is None else ambient_dim
        if any(len(v) != n for v in vertices):
            raise ValueError("inconsistent vertex dimensions")
        rays = [integerize(r) for r in rays if not is_zero(r)]
        lin = [integerize(l) for l in lineality if not is_zero(l)]

        # hidden lineality: lines spanned by rays
        gens = [v + (Fraction(1),) for v in vertices] + [tuple(map(Fraction, r)) + (Fraction(0),) for r in rays]
        gens += [tuple(map(Fraction, l)) + (Fraction(0),) for l in lin]
        gens += [tuple(-Fraction(x) for x in l) + (Fraction(0),) for l in lin]
        lin_idx = conegeom.lineality_generators(tuple(gens))
        lin_vecs = [gens[i][:n] for i in sorted(lin_idx)]
        lin_basis = [integerize(r) for r in rref(lin_vecs)[0]] if lin_vecs else []

        if lin_basis:
            G = [[dot(a, b) for b in lin_basis] for a in lin_basis]

            def proj(x):
                c = solve(G, [dot(l, x) for l in lin_basis])
                return tuple(Fraction(xi) - sum(ci * l[j] for ci, l in zip(c, lin_basis))
                             for j, xi in enumerate(x))
        else:
            def proj(x):
                return tuple(Fraction(xi) for xi in x)

        verts = sorted(set(proj(v) for v in vertices))
        prs = sorted(set(integerize(p) for p in (proj(r) for r in rays) if not is_zero(p)))

        hgens = tuple([v + (Fraction(1),) for v in verts] + [tuple(map(Fraction, r)) + (Fraction(0),) for r in prs])
        fs = conegeom.facets(hgens)
        keep = []
        for i in range(len(hgens)):
            face = frozenset(range(len(hgens)))
            for _, z in fs:
                if i in z:
                    face &= z
            if rank([hgens[j] for j in face]) == 1:
                keep.append(i)
        nv = len(verts)
        self.ambient_dim = n
        self.vertices = tuple(verts[i] for i in keep if i < nv)
        self.rays = tuple(prs[i - nv] for i in keep if i >= nv)
        self.lineality = tuple(lin_basis)

    # -- identity -----------------------------------------------------------
    @cached_property
    def key(self):
        return (self.ambient_dim, self.vertices, self.rays, self.lineality)

    def __eq__(self, other):
        return isinstance(other, Polyhedron) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __lt__(self, other):
        return (self.dim, self.key) < (other.dim, other.key)

    def __repr__(self):
        fmt = lambda v: "(" + ",".join(str(x) for x in v) + ")"
        parts = ["V=" + " ".join(fmt(v) for v in self.vertices)]
        if self.rays:
            parts.append("R=" + " ".join(fmt(r) for r in self.rays))
        if self.lineality:
            parts.append("L=" + " ".join(fmt(l) for l in self.lineality))
        return f"Polyhedron({', '.join(parts)})"

    # -- basic invariants ---------------------------------------------------
    @cached_property
    def direction_rows(self) -> list[tuple]:
        v0 = self.vertices[0]
        return [vsub(v, v0) for v in self.vertices[1:]] + [tuple(map(Fraction, r)) for r in self.rays] \
            + [tuple(map(Fraction, l)) for l in self.lineality]

    @cached_property
    def dim(self) -> int:
        return rank(self.direction_rows)

    @property
    def is_bounded(self) -> bool:
        return not self.rays and not self.lineality

    @property
    def is_cone(self) -> bool:
        return len(self.vertices) == 1 and is_zero(self.vertices[0])

    @cached_property
    def is_integral(self) -> bool:
        return all(x.denominator == 1 for v in self.vertices for x in v)

    @cached_property
    def homogenized(self) -> tuple[tuple, ...]:
        one, zero = Fraction(1), Fraction(0)
        g = [v + (one,) for v in self.vertices]
        g += [tuple(map(Fraction, r)) + (zero,) for r in self.rays]
        g += [tuple(map(Fraction, l)) + (zero,) for l in self.lineality]
        g += [tuple(-Fraction(x) for x in l) + (zero,) for l in self.lineality]
        return tuple(g)

    @cached_property
    def relint_point(self) -> tuple[Fraction, ...]:
        nv = len(self.vertices)
        c = [sum(v[j] for v in self.vertices) / nv for j in range(self.ambient_dim)]
        for r in self.rays:
            c = [a + b for a, b in zip(c, r)]
        return tuple(c)

    # -- H-representation ---------------------------------------------------
    @cached_property
    def hrep(self):
        """(equations, inequalities) on homogenized points (x, 1)."""
        g = self.homogenized
        m = self.ambient_dim + 1
        eqs = [integerize(e) for e in nullspace(g, m)]
        ineqs = [normal for normal, _ in conegeom.facets(g)]
        return eqs, ineqs

    def contains(self, x: Sequence) -> bool:
        p = tuple(Fraction(a) for a in x) + (Fraction(1),)
        eqs, ineqs = self.hrep
        return all(dot(e, p) == 0 for e in eqs) and all(dot(a, p) >= 0 for a in ineqs)

    def contains_direction(self, y: Sequence) -> bool:
        p = tuple(Fraction(a) for a in y) + (Fraction(0),)
        eqs, ineqs = self.hrep
        return all(dot(e, p) == 0 for e in eqs) and all(dot(a, p) >= 0 for a in ineqs)

    def contains_polyhedron(self, other: "Polyhedron") -> bool:
        return (all(self.contains(v) for v in other.vertices)
                and all(self.contains_direction(r) for r in other.rays)
                and all(self.contains_direction(l) and self.contains_direction(vscale(-1, l))
                        for l in other.lineality))

    def in_relative_interior(self, x: Sequence) -> bool:
        if not self.contains(x):
            return False
        return all(not f.contains(x) for f in self.facets)

    def intersection(self, other: "Polyhedron") -> "Polyhedron | None":
        n = self.ambient_dim
        e1, a1 = self.hrep
        e2, a2 = other.hrep
        t = tuple([0] * n + [1])
        lin, rays = conegeom.cone_from_inequalities(e1 + e2, a1 + a2 + [t], n + 1)
        verts = [tuple(Fraction(x, r[-1]) for x in r[:-1]) for r in rays if r[-1] > 0]
        if not verts:
            return None
        return Polyhedron(verts, [r[:-1] for r in rays if r[-1] == 0], [l[:-1] for l in lin], ambient_dim=n)

    # -- face lattice -------------------------------------------------------
    @cached_property
    def faces(self) -> tuple["Polyhedron", ...]:
        """All nonempty faces, including P itself, sorted by (dim, key)."""
        g = self.homogenized
        nv, nr = len(self.vertices), len(self.rays)
        out = set()
        for F in conegeom.faces(g):
            vs = [self.vertices[i] for i in sorted(F) if i < nv]
            if not vs:
                continue
            rs = [self.rays[i - nv] for i in sorted(F) if nv <= i < nv + nr]
            out.add(Polyhedron(vs, rs, self.lineality, ambient_dim=self.ambient_dim))
        return tuple(sorted(out))

    @cached_property
    def facets(self) -> tuple["Polyhedron", ...]:
        return tuple(f for f in self.faces if f.dim == self.dim - 1)

    def recession_cone(self) -> "Polyhedron":
        return Polyhedron([[0] * self.ambient_dim], self.rays, self.lineality, ambient_dim=self.ambient_dim)

    def scaled(self, d) -> "Polyhedron":
        return Polyhedron([vscale(Fraction(d), v) for v in self.vertices], self.rays, self.lineality,
                          ambient_dim=self.ambient_dim)


def cone(rays: Iterable[Sequence[int]], lineality: Iterable[Sequence[int]] = (), ambient_dim: int | None = None) -> Polyhedron:
    rays = [tuple(r) for r in rays]
    lineality = [tuple(l) for l in lineality]
    if ambient_dim is None:
        ambient_dim = len((rays or lineality)[0])
    return Polyhedron([[0] * ambient_dim], rays, lineality, ambient_dim=ambient_dim)


# ---------------------------------------------------------------------------
# Complexes
# ---------------------------------------------------------------------------

class PolyhedralComplex:
    """An indexed set of polyhedra closed under faces with its face lattice.

    Construct through :func:`validate_complex`; the constructor itself only
    indexes cells and assumes the complex axioms.
    """

    def __init__(self, cells: Sequence[Polyhedron], ambient_dim: int, complete: bool | None = None):
        self.cells = tuple(cells)
        self.ambient_dim = ambient_dim
        self.complete = complete
        self.index = {c: i for i, c in enumerate(self.cells)}

    def __len__(self):
        return len(self.cells)

    def __iter__(self):
        return iter(self.cells)

    def __getitem__(self, i) -> Polyhedron:
        return self.cells[i]

    def __repr__(self):
        return f"{type(self).__name__}({len(self.cells)} cells, dim {self.dim}, in R^{self.ambient_dim})"

    @cached_property
    def faces_of(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(self.index[f] for f in c.faces) for c in self.cells)

    @cached_property
    def facets_of(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(sorted(self.index[f] for f in c.facets)) for c in self.cells)

    @cached_property
    def cofacets_of(self) -> tuple[tuple[int, ...], ...]:
        out = [[] for _ in self.cells]
        for i, fs in enumerate(self.facets_of):
            for j in fs:
                out[j].append(i)
        return tuple(tuple(x) for x in out)

    @cached_property
    def dim(self) -> int:
        return max((c.dim for c in self.cells), default=-1)

    def cells_of_dim(self, k: int) -> list[int]:
        return [i for i, c in enumerate(self.cells) if c.dim == k]

    @cached_property
    def maximal_cells(self) -> tuple[int, ...]:
        covered = set()
        for i, fs in enumerate(self.faces_of):
            covered.update(j for j in fs if j != i)
        return tuple(i for i in range(len(self.cells)) if i not in covered)

    @property
    def is_pure(self) -> bool:
        return all(self.cells[i].dim == self.dim for i in self.maximal_cells)

    def key_set(self) -> frozenset:
        return frozenset(self.cells)

    def same_cells(self, other: "PolyhedralComplex") -> bool:
        return self.key_set() == other.key_set()

    def carrier(self, x: Sequence) -> int | None:
        """Index of the cell containing x in its relative interior."""
        best = None
        for i, c in enumerate(self.cells):
            if c.contains(x) and (best is None or c.dim < self.cells[best].dim):
                best = i
        return best

    def contains(self, x: Sequence) -> bool:
        return any(self.cells[i].contains(x) for i in self.maximal_cells)

    @property
    def is_integral(self) -> bool:
        return all(c.is_integral for c in self.cells)


class Fan(PolyhedralComplex):
    """A polyhedral complex all of whose cells are cones with apex 0."""

    def __init__(self, cells, ambient_dim, complete=None):
        super().__init__(cells, ambient_dim, complete)
        bad = [i for i, c in enumerate(self.cells) if not c.is_cone]
        if bad:
            raise ValueError(f"cells {bad} are not cones with apex 0")

    @cached_property
    def rays(self) -> tuple[tuple[int, ...], ...]:
        return tuple(sorted({r for c in self.cells for r in c.rays}))


@dataclass(frozen=True)
class ConeDecoration:
    """Tag per cone of a cone-over fan: ("lifted", P) or ("recession", P)."""

    tags: dict = field(default_factory=dict)

    def __getitem__(self, i):
        return self.tags[i]


def canonical_order(cells: Iterable[Polyhedron]) -> list[Polyhedron]:
    return sorted(set(cells))


def validate_complex(cells: Iterable[Polyhedron], *, add_faces: bool = False, check_complete: bool = False,
                     ambient_dim: int | None = None, fan: bool = False, trusted=None) -> PolyhedralComplex:
    """Check the polyhedral complex axioms and build the face lattice.

    With ``add_faces`` missing faces are appended (deterministically, in
    (dim, key) order) instead of raising :class:`NotClosedUnderFaces`.
    ``trusted(P, Q)`` may vouch for pairs of maximal cells known to meet
    in a common face.
    """
    ordered = []
    seen = set()
    for c in cells:
        if c not in seen:
            seen.add(c)
            ordered.append(c)
    if ambient_dim is None:
        if not ordered:
            raise ValueError("empty complex needs an explicit ambient_dim")
        ambient_dim = ordered[0].ambient_dim
    if any(c.ambient_dim != ambient_dim for c in ordered):
        raise ValueError("cells live in different ambient spaces")

    missing = []
    for i, c in enumerate(ordered):
        for f in c.faces:
            if f not in seen:
                if not add_faces:
                    raise NotClosedUnderFaces(f"face {f!r} of cell {i} is not in the complex",
                                              cell=i, face=repr(f))
                seen.add(f)
                missing.append(f)
    ordered.extend(sorted(missing))

    cls = Fan if fan else PolyhedralComplex
    cx = cls(ordered, ambient_dim)
    maxi = cx.maximal_cells
    boxes = {i: _box(cx.cells[i]) for i in maxi}
    for a, b in combinations(maxi, 2):
        P, Q = cx.cells[a], cx.cells[b]
        if _boxes_apart(boxes[a], boxes[b]) or (trusted is not None and trusted(P, Q)):
            continue
        inter = P.intersection(Q)
        if inter is None:
            continue
        if inter not in cx.index or cx.index[inter] not in cx.faces_of[a] or cx.index[inter] not in cx.faces_of[b]:
            raise BadIntersection(f"cells {a} and {b} meet in {inter!r}, which is not a common face",
                                  cell_i=a, cell_j=b)
    if check_complete:
        cx.complete = _looks_complete(cx)
    return cx


def _box(P):
    """Coordinate-wise bounds, None where a ray or lineality vector escapes."""
    out = []
    for k in range(P.ambient_dim):
        xs = [v[k] for v in P.vertices]
        dirs = [r[k] for r in P.rays] + [x for l in P.lineality for x in (l[k], -l[k])]
        lo = None if any(x < 0 for x in dirs) else min(xs)
        hi = None if any(x > 0 for x in dirs) else max(xs)
        out.append((lo, hi))
    return out


def _boxes_apart(A, B):
    return any((ha is not None and lb is not None and ha < lb) or (hb is not None and la is not None and hb < la)
               for (la, ha), (lb, hb) in zip(A, B))


def _looks_complete(cx: PolyhedralComplex) -> bool:
    n = cx.ambient_dim
    if not cx.cells or any(cx.cells[i].dim != n for i in cx.maximal_cells):
        return False
    for j in cx.cells_of_dim(n - 1):
        if len([i for i in cx.cofacets_of[j] if cx.cells[i].dim == n]) != 2:
            return False
    return True


def make_complex(cells: Iterable[Polyhedron], ambient_dim: int | None = None, *, fan: bool = False,
                 check: bool = True) -> PolyhedralComplex:
    """Build a complex in canonical cell order, adding faces."""
    cells = list(cells)
    allc = set()
    for c in cells:
        allc.update(c.faces)
    ordered = canonical_order(allc)
    if ambient_dim is None:
        ambient_dim = ordered[0].ambient_dim
    if check:
        return validate_complex(ordered, ambient_dim=ambient_dim, fan=fan)
    return (Fan if fan else PolyhedralComplex)(ordered, ambient_dim)


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------

def lift_cell(P: Polyhedron) -> Polyhedron:
    """Closure of {(x, a) : a > 0, x/a in P}."""
    n = P.ambient_dim
    rays = [integerize(v + (Fraction(1),)) for v in P.vertices]
    rays += [tuple(r) + (0,) for r in P.rays]
    return cone(rays, [tuple(l) + (0,) for l in P.lineality], ambient_dim=n + 1)


def height_zero_cell(P: Polyhedron) -> Polyhedron:
    n = P.ambient_dim
    return cone([tuple(r) + (0,) for r in P.rays], [tuple(l) + (0,) for l in P.lineality], ambient_dim=n + 1)


def cone_over(sigma: PolyhedralComplex, *, check: bool = True) -> tuple[Fan, ConeDecoration]:
    """The fan of lifted cones P~ and their height-zero faces P_0.

    The check assumes ``sigma`` is a valid complex: two lifted cones then
    meet in a common face unless both cells are unbounded, so only those
    pairs are intersected.
    """
    n = sigma.ambient_dim
    tags = {}
    cells = []
    for i, P in enumerate(sigma.cells):
        lifted = lift_cell(P)
        if lifted not in tags:
            tags[lifted] = ("lifted", i)
            cells.append(lifted)
    for i, P in enumerate(sigma.cells):
        rec = height_zero_cell(P)
        if rec not in tags:
            tags[rec] = ("recession", i)
            cells.append(rec)
    ordered = canonical_order(cells)
    if check:
        src = {c: sigma.cells[i] for c, (kind, i) in tags.items() if kind == "lifted"}

        def trusted(A, B):
            return A in src and B in src and (src[A].is_bounded or src[B].is_bounded)

        fan = validate_complex(ordered, ambient_dim=n + 1, fan=True, trusted=trusted)
    else:
        fan = Fan(ordered, n + 1)
    deco = ConeDecoration({fan.index[c]: tags[c] for c in ordered})
    return fan, deco


def recession_fan(sigma: PolyhedralComplex, *, check: bool = True) -> Fan:
    cells = canonical_order(P.recession_cone() for P in sigma.cells)
    if check:
        return validate_complex(cells, ambient_dim=sigma.ambient_dim, fan=True)
    return Fan(cells, sigma.ambient_dim)


def slice_fan(fan: PolyhedralComplex, h=1, *, check: bool = True) -> PolyhedralComplex:
    """Intersect every cone with {last coordinate = h} and project to R^n."""
    h = Fraction(h)
    if h <= 0:
        raise ValueError("slice height must be positive")
    n = fan.ambient_dim - 1
    positive = []
    for i, C in enumerate(fan.cells):
        if any(l[-1] != 0 for l in C.lineality) or any(r[-1] < 0 for r in C.rays):
            raise FanNotSliceable(f"cone {i} reaches negative height", cone=i)
        if any(r[-1] > 0 for r in C.rays):
            positive.append(i)
    pos_faces = set()
    for i in positive:
        pos_faces.update(fan.faces_of[i])
    for i, C in enumerate(fan.cells):
        if i not in pos_faces:
            raise FanNotSliceable(f"cone {i} lies at height 0 and is not a face of a cone meeting height > 0",
                                  cone=i)
    cells = []
    for i in positive:
        C = fan.cells[i]
        verts = [tuple(Fraction(x) * h / r[-1] for x in r[:-1]) for r in C.rays if r[-1] > 0]
        rays = [r[:-1] for r in C.rays if r[-1] == 0]
        cells.append(Polyhedron(verts, rays, [l[:-1] for l in C.lineality], ambient_dim=n))
    ordered = canonical_order(cells)
    if check:
        return validate_complex(ordered, ambient_dim=n)
    return PolyhedralComplex(ordered, n)


def rescale_to_integral(sigma: PolyhedralComplex) -> tuple[int, PolyhedralComplex]:
    d = lcm(x.denominator for c in sigma.cells for v in c.vertices for x in v)
    if d == 1:
        return 1, sigma
    cells = [c.scaled(d) for c in sigma.cells]
    return d, type(sigma)(cells, sigma.ambient_dim, sigma.complete)


def bounded_subcomplex(sigma: PolyhedralComplex) -> PolyhedralComplex:
    cells = [c for c in sigma.cells if c.is_bounded]
    return PolyhedralComplex(cells, sigma.ambient_dim)
