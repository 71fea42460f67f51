"""Tropical hypersurfaces of valued polynomials and the balancing condition.

Min-plus convention: the tropical polynomial of f = sum c_a x^a is
w -> min_a (val(c_a) + <w, a>), and Trop(V(f)) is where the minimum is
attained at least twice.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import NotPure, SingleTerm
from .lattice import dot, gcd_all, integerize, is_zero, quotient_map, vsub
from .polyhedra import Polyhedron, PolyhedralComplex, make_complex


@dataclass(frozen=True)
class ValuedPolynomial:
    """Exponent vectors with the valuations of their coefficients."""

    n: int
    terms: Mapping[tuple[int, ...], Fraction]
    labels: Mapping[tuple[int, ...], str] = field(default_factory=dict)

    def __post_init__(self):
        terms = {tuple(int(x) for x in a): Fraction(v) for a, v in dict(self.terms).items()}
        if not terms:
            raise ValueError("a polynomial needs at least one term")
        if any(len(a) != self.n for a in terms):
            raise ValueError(f"exponent vectors must have length {self.n}")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def from_pairs(cls, pairs: Sequence[tuple[Sequence[int], object]]) -> "ValuedPolynomial":
        pairs = list(pairs)
        terms = {}
        for a, v in pairs:
            a = tuple(a)
            if a in terms:
                raise ValueError(f"exponent {a} listed twice")
            terms[a] = Fraction(v)
        return cls(len(pairs[0][0]), terms)

    def tropical_value(self, w: Sequence) -> Fraction:
        return min(v + dot(w, a) for a, v in self.terms.items())


def initial_form(f: ValuedPolynomial, w: Sequence) -> frozenset[tuple[int, ...]]:
    """Exponents of the terms attaining min(val(c_a) + <w, a>)."""
    if len(w) != f.n:
        raise ValueError(f"weight vector must have length {f.n}")
    w = [Fraction(x) for x in w]
    vals = {a: v + dot(w, a) for a, v in f.terms.items()}
    m = min(vals.values())
    return frozenset(a for a, x in vals.items() if x == m)


@dataclass
class WeightedTropicalComplex:
    """A pure polyhedral complex with positive integer weights on its top cells."""

    base: PolyhedralComplex
    weights: dict[int, int]
    dual: dict[int, tuple] = field(default_factory=dict)

    def __post_init__(self):
        top = self.top_cells
        for i in self.base.maximal_cells:
            if self.base.cells[i].dim != self.dim:
                raise NotPure(f"maximal cell {i} has dimension {self.base.cells[i].dim}, expected {self.dim}",
                              cell=i)
        for i in top:
            w = self.weights.get(i)
            if not isinstance(w, int) or w <= 0:
                raise ValueError(f"top cell {i} needs a positive integer weight")
        extra = set(self.weights) - set(top)
        if extra:
            raise ValueError(f"weights given on non-top cells {sorted(extra)}")

    @property
    def dim(self) -> int:
        return self.base.dim

    @property
    def top_cells(self) -> list[int]:
        return self.base.cells_of_dim(self.dim)


def tropical_hypersurface(f: ValuedPolynomial, *, check: bool = True) -> WeightedTropicalComplex:
    """Trop(V(f)) as the complex dual to the regular subdivision of the Newton polytope.

    Each bounded face Q of the lifted polyhedron conv{(a, val_a)} + R>=0 e_{n+1}
    with dim Q >= 1 gives the cell of weights w whose (w, 1) is minimised on Q.
    Top cells are dual to lifted edges and get the edge's lattice length.
    """
    if len(f.terms) < 2:
        raise SingleTerm("a monomial has empty tropical hypersurface")
    n = f.n
    lifted = Polyhedron([tuple(a) + (v,) for a, v in f.terms.items()],
                        rays=[tuple([0] * n + [1])], ambient_dim=n + 1)
    eqs, ineqs = lifted.hrep
    lin = [e[:n] for e in eqs]
    cells = {}
    for Q in lifted.faces:
        if not Q.is_bounded or Q.dim < 1:
            continue
        hom = [q + (Fraction(1),) for q in Q.vertices]
        normals = [a for a in ineqs if all(dot(a, h) == 0 for h in hom)]
        verts = [tuple(Fraction(x, a[n]) for x in a[:n]) for a in normals if a[n] > 0]
        rays = [a[:n] for a in normals if a[n] == 0]
        C = Polyhedron(verts, rays, lin, ambient_dim=n)
        cells[C] = Q
    cx = make_complex(cells, n, check=check)
    weights = {}
    dual = {}
    top = cx.dim
    for i, C in enumerate(cx.cells):
        Q = cells.get(C)
        if Q is None:
            continue
        if C.dim == top:
            a, b = Q.vertices
            weights[i] = gcd_all(int(x) for x in vsub(a, b)[:n])
        dual[i] = tuple(tuple(int(x) for x in q[:n]) for q in Q.vertices)
    return WeightedTropicalComplex(cx, weights, dual)


@dataclass
class BalancingReport:
    balanced: bool
    violations: list[dict]

    def __bool__(self):
        return self.balanced


def balancing_check(T: WeightedTropicalComplex) -> BalancingReport:
    """Weighted primitive normals around every codimension-one cell must sum to zero mod its span."""
    cx = T.base
    n = cx.ambient_dim
    weights = T.weights
    violations = []
    for j in cx.cells_of_dim(T.dim - 1):
        tau = cx.cells[j]
        span = [integerize(r) for r in tau.direction_rows if not is_zero(r)]
        q = quotient_map(span, n)
        total = None
        for i in cx.cofacets_of[j]:
            if i not in weights:
                continue
            u = vsub(cx.cells[i].relint_point, tau.relint_point)
            v = integerize(q(u))
            contrib = tuple(weights[i] * x for x in v)
            total = contrib if total is None else tuple(a + b for a, b in zip(total, contrib))
        if total is None:
            total = tuple([0] * (n - len(span)))
        if not is_zero(total):
            violations.append({"cell": j, "sum": list(total)})
    return BalancingReport(not violations, violations)

