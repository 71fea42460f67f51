"""Covers of a weighted complex by component data, and the complex Gamma they define.

A cover lists, for every cell P, the components Y over P and, for every
facet P_i of P, which component of P_i contains Y. The cells of Gamma are the
pairs (P, Y); (P_i, Y_i) is a facet of (P, Y) exactly when the assignment
sends Y to Y_i.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from .errors import (CellImageNotContained, IncompatibleAssignment, InvalidCover,
                     NotARefinement, WeightMismatch)
from .homology import ChainComplex, HomologyResult, chain_complex_from_incidence, homology_of
from .lattice import det, matmul, rref, solve, transpose, vsub
from .polyhedra import Polyhedron, PolyhedralComplex, make_complex

Cell = tuple[int, str]


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    reasons: tuple[str, ...] = ()

    def __bool__(self):
        return self.ok


@dataclass
class GammaCover:
    """Component sets and top-down facet assignments over a weighted complex.

    Validated on construction: totality, path independence of composed
    assignments, and |components(P)| = weight(P) on top cells.
    """

    base: PolyhedralComplex
    weights: dict[int, int]
    components: dict[int, tuple[str, ...]]
    assignments: dict[tuple[int, str, int], str]
    check_weights: bool = True
    down: dict[Cell, dict[int, str]] = field(init=False, repr=False)

    def __post_init__(self):
        self.components = {int(k): tuple(v) for k, v in self.components.items()}
        self._validate()

    def _validate(self):
        cx = self.base
        for i in range(len(cx)):
            comps = self.components.get(i)
            if not comps:
                raise InvalidCover(f"cell {i} has no components", cell=i)
            if len(set(comps)) != len(comps):
                raise InvalidCover(f"cell {i} lists a component twice", cell=i)
        extra = set(self.components) - set(range(len(cx)))
        if extra:
            raise InvalidCover(f"components given for unknown cells {sorted(extra)}")
        for (P, Y, F), Z in self.assignments.items():
            if not 0 <= P < len(cx) or Y not in self.components[P]:
                raise InvalidCover(f"assignment source ({P}, {Y}) is not a cell of the cover", cell=P, component=Y)
            if F not in cx.facets_of[P]:
                raise InvalidCover(f"cell {F} is not a facet of cell {P}", cell=P, facet=F)
            if Z not in self.components[F]:
                raise InvalidCover(f"component {Z} does not lie over cell {F}", cell=P, component=Y,
                                   facet=F, image=Z)
        for P in range(len(cx)):
            for Y in self.components[P]:
                for F in cx.facets_of[P]:
                    if (P, Y, F) not in self.assignments:
                        raise InvalidCover(f"no assignment for component {Y} of cell {P} on facet {F}",
                                           cell=P, component=Y, facet=F)
        self.down = {}
        order = sorted(range(len(cx)), key=lambda i: cx.cells[i].dim)
        for P in order:
            for Y in self.components[P]:
                reach = {P: Y}
                via = {P: (P,)}
                for F in cx.facets_of[P]:
                    Z = self.assignments[(P, Y, F)]
                    for G, W in self.down[(F, Z)].items():
                        if G in reach and reach[G] != W:
                            raise IncompatibleAssignment(
                                f"component {Y} of cell {P} reaches cell {G} as both {reach[G]} and {W}",
                                cell=P, component=Y, face=G, images=sorted([reach[G], W]),
                                via_facets=sorted([via[G][0], F]))
                        reach[G] = W
                        via.setdefault(G, (F,))
                self.down[(P, Y)] = reach
        if self.check_weights:
            top = cx.dim
            for P in cx.cells_of_dim(top):
                w = self.weights.get(P)
                if w is not None and w != len(self.components[P]):
                    raise WeightMismatch(f"cell {P} has weight {w} but {len(self.components[P])} components",
                                         cell=P, weight=w, components=len(self.components[P]))

    def image(self, P: int, Y: str, G: int) -> str:
        """Component of the face G of P containing Y."""
        return self.down[(P, Y)][G]

    @classmethod
    def trivial(cls, base: PolyhedralComplex, weights: Mapping[int, int] | None = None) -> "GammaCover":
        comps = {i: ("0",) for i in range(len(base))}
        assign = {(P, "0", F): "0" for P in range(len(base)) for F in base.facets_of[P]}
        if weights is None:
            weights = {i: 1 for i in base.cells_of_dim(base.dim)}
        return cls(base, dict(weights), comps, assign)


def _orientation_basis(P: Polyhedron) -> list[tuple]:
    return [tuple(r) for r in rref(P.direction_rows)[0]]


def _incidence(P: Polyhedron, F: Polyhedron, BP: list, BF: list) -> int:
    """Sign comparing (outward direction, B_F) with B_P."""
    o = vsub(F.relint_point, P.relint_point)
    rows = [o] + list(BF)
    A = transpose([list(b) for b in BP], len(o))
    coords = [solve(A, list(v)) for v in rows]
    d = det(coords)
    return 1 if d > 0 else -1


def oriented_incidences(cx: PolyhedralComplex) -> dict[tuple[int, int], int]:
    """[P : F] for every cell P and facet F, from a fixed basis of each cell's direction space."""
    bases = [_orientation_basis(c) for c in cx.cells]
    inc = {}
    for i, P in enumerate(cx.cells):
        if P.dim == 0:
            continue
        for j in cx.facets_of[i]:
            inc[(i, j)] = _incidence(P, cx.cells[j], bases[i], bases[j])
    return inc


class GammaComplex:
    """The complex of pairs (P, Y) with its projection to the base."""

    def __init__(self, cover: GammaCover):
        self.cover = cover
        self.base = cover.base
        self.cells: list[Cell] = [(P, Y) for P in range(len(self.base)) for Y in cover.components[P]]
        self.index = {c: i for i, c in enumerate(self.cells)}

    def __len__(self):
        return len(self.cells)

    def __repr__(self):
        return f"GammaComplex({len(self.cells)} cells over {len(self.base)} base cells)"

    def polyhedron(self, c: Cell) -> Polyhedron:
        return self.base.cells[c[0]]

    def projection(self, c: Cell) -> int:
        return c[0]

    def dim_of(self, c: Cell) -> int:
        return self.base.cells[c[0]].dim

    @property
    def dim(self) -> int:
        return self.base.dim

    @cached_property
    def facets_of(self) -> dict[Cell, list[Cell]]:
        out = {}
        for P, Y in self.cells:
            out[(P, Y)] = [(F, self.cover.assignments[(P, Y, F)]) for F in self.base.facets_of[P]]
        return out

    @cached_property
    def faces_of(self) -> dict[Cell, list[Cell]]:
        return {(P, Y): sorted(self.cover.down[(P, Y)].items()) for P, Y in self.cells}

    def fiber_count(self, P: int) -> int:
        return len(self.cover.components[P])

    def weights(self) -> dict[Cell, int]:
        return {c: 1 for c in self.cells if self.dim_of(c) == self.dim}

    @cached_property
    def bounded_cells(self) -> list[Cell]:
        return [c for c in self.cells if self.polyhedron(c).is_bounded]

    def cells_of_dim(self, k: int, bounded: bool = False) -> list[Cell]:
        src = self.bounded_cells if bounded else self.cells
        return [c for c in src if self.dim_of(c) == k]

    @cached_property
    def _base_incidence(self):
        return oriented_incidences(self.base)

    def chain_complex(self, bounded: bool = True) -> ChainComplex:
        """Cellular chains with geometric orientations.

        With ``bounded`` only the compact cells (P bounded) are used; this is a
        finite CW complex. Otherwise see :meth:`compact_model`.
        """
        if not bounded:
            return self.compact_model()
        src = self.bounded_cells
        by_dim: dict[int, list] = {}
        for c in src:
            by_dim.setdefault(self.dim_of(c), []).append(c)
        inc = {}
        for P, Y in src:
            for F in self.base.facets_of[P]:
                inc[((P, Y), (F, self.cover.assignments[(P, Y, F)]))] = self._base_incidence[(P, F)]
        return chain_complex_from_incidence(by_dim, inc)

    def compact_model(self, *, force_truncation: bool = False) -> ChainComplex:
        """Cellular chains of Gamma truncated by a cube containing every vertex.

        Every cell meets the open cube, as do all intersections of cells, so
        the truncation has the homotopy type of Gamma. Cells of the truncated
        base are faces of P ∩ cube; each is lifted using its carrier cell.
        A bounded base is its own truncation unless ``force_truncation``.
        """
        base = self.base
        if not force_truncation and all(c.is_bounded for c in base.cells):
            return self.chain_complex(bounded=True)
        n = base.ambient_dim
        R = 1 + max((abs(x) for c in base.cells for v in c.vertices for x in v), default=Fraction(0))
        R = Fraction(int(R) + 1)
        cube = Polyhedron([tuple(R if (m >> k) & 1 else -R for k in range(n)) for m in range(2 ** n)],
                          ambient_dim=n)
        pieces = set()
        for c in base.cells:
            Q = c.intersection(cube)
            if Q is not None:
                pieces.update(Q.faces)
        tcx = make_complex(pieces, n, check=False)
        carrier = [base.carrier(c.relint_point) for c in tcx.cells]
        tinc = oriented_incidences(tcx)
        by_dim: dict[int, list] = {}
        cells = []
        for i, C in enumerate(tcx.cells):
            for Y in self.cover.components[carrier[i]]:
                cells.append((i, Y))
                by_dim.setdefault(C.dim, []).append((i, Y))
        inc = {}
        for i, Y in cells:
            P = carrier[i]
            for j in tcx.facets_of[i]:
                G = carrier[j]
                Z = Y if G == P else self.cover.image(P, Y, G)
                inc[((i, Y), (j, Z))] = tinc[(i, j)]
        return chain_complex_from_incidence(by_dim, inc)

    def homology(self) -> HomologyResult:
        return homology_of(self.compact_model())

    def bounded_homology(self) -> HomologyResult:
        return homology_of(self.chain_complex(bounded=True))

    def euler_characteristic(self) -> int:
        return self.compact_model().euler_characteristic()


def build_gamma(cover: GammaCover) -> GammaComplex:
    return GammaComplex(cover)


# ---------------------------------------------------------------------------
# Refinements and maps
# ---------------------------------------------------------------------------

def _carrier_or_fail(coarse: PolyhedralComplex, P: Polyhedron, idx: int) -> int:
    k = coarse.carrier(P.relint_point)
    if k is None or not coarse.cells[k].contains_polyhedron(P):
        raise NotARefinement(f"refined cell {idx} lies in no cell of the coarse complex", cell=idx)
    return k


def refinement_carriers(coarse: PolyhedralComplex, fine: PolyhedralComplex) -> list[int]:
    """Carrier cell of every fine cell, checking that fine subdivides coarse."""
    if coarse.ambient_dim != fine.ambient_dim:
        raise NotARefinement("complexes live in different ambient spaces")
    carrier = [_carrier_or_fail(coarse, c, i) for i, c in enumerate(fine.cells)]
    for k, P in enumerate(coarse.cells):
        tops = [i for i, c in enumerate(fine.cells) if carrier[i] == k and c.dim == P.dim]
        if not tops:
            raise NotARefinement(f"coarse cell {k} is not covered", cell=k)
        for j, c in enumerate(fine.cells):
            if carrier[j] == k and c.dim == P.dim - 1:
                sides = [i for i in fine.cofacets_of[j] if i in tops]
                if len(sides) != 2:
                    raise NotARefinement(f"coarse cell {k} is not covered near refined cell {j}", cell=k, fine_cell=j)
    return carrier


def gamma_refinement_check(cover: GammaCover, fine_cover: GammaCover,
                           correspondence: Mapping[Cell, Cell] | None = None) -> CheckResult:
    """Does the map Gamma' -> Gamma induced by ``correspondence`` biject over every point?

    Without a correspondence, each (P', Y') goes to (carrier(P'), Y').
    """
    carrier = refinement_carriers(cover.base, fine_cover.base)
    reasons = []
    corr = dict(correspondence) if correspondence is not None else {
        (i, Y): (carrier[i], Y) for i in range(len(fine_cover.base)) for Y in fine_cover.components[i]}
    for i in range(len(fine_cover.base)):
        P = carrier[i]
        images = []
        for Y in fine_cover.components[i]:
            tgt = corr.get((i, Y))
            if tgt is None:
                reasons.append(f"({i}, {Y}) has no image")
                continue
            if tgt[0] != P:
                if not cover.base.cells[tgt[0]].contains_polyhedron(fine_cover.base.cells[i]):
                    raise NotARefinement(f"({i}, {Y}) is sent to cell {tgt[0]}, which does not contain it",
                                         cell=i, target=tgt[0])
                reasons.append(f"({i}, {Y}) is sent to cell {tgt[0]}, not its carrier {P}")
                continue
            if tgt[1] not in cover.components[P]:
                reasons.append(f"({i}, {Y}) is sent to unknown component {tgt[1]} of cell {P}")
                continue
            images.append(tgt[1])
        if sorted(images) != sorted(cover.components[P]) or len(set(images)) != len(images):
            reasons.append(f"over refined cell {i} the fiber has {len(fine_cover.components[i])} points, "
                           f"over its carrier {P} it has {len(cover.components[P])}")
    if not reasons:
        for i in range(len(fine_cover.base)):
            for Y in fine_cover.components[i]:
                P, X = corr[(i, Y)]
                for j in fine_cover.base.facets_of[i]:
                    Z = fine_cover.assignments[(i, Y, j)]
                    G, W = corr[(j, Z)]
                    expect = X if G == P else cover.down[(P, X)].get(G)
                    if W != expect:
                        reasons.append(f"facet {j} of ({i}, {Y}) maps to ({G}, {W}), expected ({G}, {expect})")
    return CheckResult(not reasons, tuple(reasons))


def image_polyhedron(A: Sequence[Sequence[int]], P: Polyhedron) -> Polyhedron:
    m = len(A)
    AT = transpose(A, P.ambient_dim)

    def ap(v):
        return tuple(matmul([list(v)], AT)[0]) if m else ()

    return Polyhedron([ap(v) for v in P.vertices], [ap(r) for r in P.rays], [ap(l) for l in P.lineality],
                      ambient_dim=m)


def functoriality_check(A: Sequence[Sequence[int]], gamma_x: GammaComplex | GammaCover,
                        gamma_y: GammaComplex | GammaCover,
                        component_map: Mapping[Cell, Cell]) -> CheckResult:
    """Is ``component_map`` a map of Gammas lying over the linear map A?"""
    cx = gamma_x.cover if isinstance(gamma_x, GammaComplex) else gamma_x
    cy = gamma_y.cover if isinstance(gamma_y, GammaComplex) else gamma_y
    X, Yc = cx.base, cy.base
    images = [image_polyhedron(A, P) for P in X.cells]
    for i, Q in enumerate(images):
        if not any(C.contains_polyhedron(Q) for C in Yc.cells):
            raise CellImageNotContained(f"the image of cell {i} lies in no cell of the target", cell=i)
    reasons = []
    for P in range(len(X)):
        for Xi in cx.components[P]:
            tgt = component_map.get((P, Xi))
            if tgt is None:
                reasons.append(f"({P}, {Xi}) has no image")
                continue
            Pp, Yi = tgt
            if not 0 <= Pp < len(Yc) or Yi not in cy.components[Pp]:
                reasons.append(f"({P}, {Xi}) is sent to ({Pp}, {Yi}), which is not a cell of the target")
                continue
            if not Yc.cells[Pp].contains_polyhedron(images[P]):
                reasons.append(f"A(cell {P}) is not contained in target cell {Pp}")
    if reasons:
        return CheckResult(False, tuple(reasons))
    for P in range(len(X)):
        for Xi in cx.components[P]:
            Pp, Yi = component_map[(P, Xi)]
            for F in X.facets_of[P]:
                Xf = cx.assignments[(P, Xi, F)]
                Fp, Yf = component_map[(F, Xf)]
                if Fp == Pp:
                    ok = Yf == Yi
                else:
                    ok = cy.down[(Pp, Yi)].get(Fp) == Yf
                if not ok:
                    reasons.append(f"facet {F} of ({P}, {Xi}) goes to ({Fp}, {Yf}), "
                                   f"not compatible with ({Pp}, {Yi})")
    return CheckResult(not reasons, tuple(reasons))
