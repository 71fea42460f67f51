"""Simplicial and unimodular refinement of fans, and the normal-crossings pipeline.

Fans are handled internally as sets of maximal simplicial cones, each a
frozenset of primitive ray tuples. A stellar step inserts a lattice point p
and replaces every maximal cone containing the support face tau of p by the
cones (sigma - {rho}) + {p}, rho in tau.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import Iterable

from . import conegeom
from .errors import NotSimplicial, RefinementDiverged, UnsupportedLineality
from .lattice import dot, integerize, lattice_index, rank, snf, solve, transpose
from .polyhedra import (Fan, PolyhedralComplex, cone, make_complex,
                        rescale_to_integral, slice_fan)

Ray = tuple[int, ...]
SimplicialCone = frozenset  # of Ray


@dataclass
class RefinementReport:
    d: int = 1
    base_cones: list = field(default_factory=list)
    stellar_steps: list = field(default_factory=list)
    preserved_recession: bool = True

    def replay(self) -> set[SimplicialCone]:
        """Apply the stellar steps to the base cones."""
        cones = {frozenset(c) for c in self.base_cones}
        for _, p in self.stellar_steps:
            cones = stellar_subdivide(cones, tuple(p))
        return cones


def cone_multiplicity(C) -> int:
    """Index of the lattice spanned by the rays of C in the lattice of its span."""
    if getattr(C, "lineality", ()):
        raise NotSimplicial("cone has a lineality space")
    rays = list(C.rays) if hasattr(C, "rays") else [tuple(r) for r in C]
    if not rays:
        return 1
    if rank(rays) != len(rays):
        raise NotSimplicial(f"{len(rays)} rays span a space of dimension {rank(rays)}",
                            rays=[list(r) for r in rays])
    return lattice_index(rays)


# ---------------------------------------------------------------------------
# Placing triangulation
# ---------------------------------------------------------------------------

def _placing(rays: list[Ray]) -> list[frozenset[int]]:
    """Placing triangulation of cone(rays) inserting rays in the given order."""
    T = [frozenset()]
    placed: list[int] = []
    for i, r in enumerate(rays):
        cur = [rays[j] for j in placed]
        if not placed or rank(cur + [r]) > rank(cur):
            T = [s | {i} for s in T]
        else:
            fs = conegeom.facets(tuple(cur))
            new = set()
            for s in T:
                for x in s:
                    tau = s - {x}
                    for normal, zero in fs:
                        if all(placed.index(j) in zero for j in tau):
                            if dot(normal, r) < 0:
                                new.add(tau | {i})
                            break
            T = T + sorted(new, key=sorted)
        placed.append(i)
    return T


def _maximal(cones: Iterable[SimplicialCone]) -> set[SimplicialCone]:
    cones = set(cones)
    return {c for c in cones if not any(c < o for o in cones)}


def _fan_from_cones(cones: Iterable[SimplicialCone], ambient_dim: int, check: bool = False) -> Fan:
    cells = [cone(sorted(c), ambient_dim=ambient_dim) for c in cones]
    return make_complex(cells, ambient_dim, fan=True, check=check)


def _max_cones(F: PolyhedralComplex) -> set[SimplicialCone]:
    out = set()
    for i in F.maximal_cells:
        C = F.cells[i]
        if C.lineality:
            raise UnsupportedLineality(f"cone {i} has a lineality space; pointed fans only", cone=i)
        out.add(frozenset(C.rays))
    return out


def simplicialize(F: PolyhedralComplex, *, check: bool = False) -> tuple[Fan, RefinementReport]:
    """Placing triangulation of every cone using the lexicographic ray order.

    The shared global order makes the triangulations agree on common faces,
    and no new rays are introduced.
    """
    order = sorted({r for C in F.cells for r in C.rays})
    pos = {r: k for k, r in enumerate(order)}
    cones = set()
    for C in _max_cones(F):
        rays = sorted(C, key=pos.__getitem__)
        if rank(rays) == len(rays):
            cones.add(frozenset(rays))
            continue
        for s in _placing(rays):
            cones.add(frozenset(rays[j] for j in s))
    cones = _maximal(cones)
    report = RefinementReport(base_cones=_sorted_cones(cones))
    return _fan_from_cones(cones, F.ambient_dim, check), report


def _sorted_cones(cones) -> list[list[Ray]]:
    return sorted(sorted(c) for c in cones)


# ---------------------------------------------------------------------------
# Stellar descent
# ---------------------------------------------------------------------------

def parallelepiped_points(rays: list[Ray]) -> list[tuple[tuple[Fraction, ...], Ray]]:
    """Nonzero lattice points of the half-open parallelepiped of linearly independent rays.

    Returned as (coefficients, point). With U R V = D, points of the saturated
    lattice of the span are y Vinv[:k]; reducing y D^-1 U mod 1 walks the
    quotient group once.
    """
    k = len(rays)
    res = snf(rays)
    ds = res.diagonal
    Uk = [row[:k] for row in res.U[:k]]
    out = []

    def rec(prefix):
        if len(prefix) == k:
            if not any(prefix):
                return
            lam = [sum(Fraction(prefix[i], ds[i]) * Uk[i][j] for i in range(k)) for j in range(k)]
            lam = [c - floor(c) for c in lam]
            x = tuple(int(sum(lam[i] * rays[i][j] for i in range(k))) for j in range(len(rays[0])))
            out.append((tuple(lam), x))
            return
        for y in range(ds[len(prefix)]):
            rec(prefix + [y])

    rec([])
    return out


def _stellar_point(rays: list[Ray], prefer_height: bool) -> tuple[Ray, tuple]:
    pts = parallelepiped_points(rays)

    def key(item):
        lam, x = item
        return (0 if (not prefer_height or x[-1] > 0) else 1, sum(lam), x)

    lam, x = min(pts, key=key)
    return x, lam


def support_face(cones: set[SimplicialCone], p: Ray) -> SimplicialCone:
    """Rays of the smallest cone of the fan containing p in its relative interior."""
    for c in sorted(cones, key=sorted):
        rays = sorted(c)
        lam = solve(transpose(rays, len(p)), list(p)) if rays else None
        if lam is None or any(v < 0 for v in lam):
            continue
        return frozenset(r for r, v in zip(rays, lam) if v > 0)
    raise ValueError(f"point {p} is not in the fan")


def stellar_subdivide(cones: set[SimplicialCone], p: Ray) -> set[SimplicialCone]:
    tau = support_face(cones, p)
    out = set()
    for c in cones:
        if tau <= c:
            for rho in tau:
                out.add((c - {rho}) | {p})
        else:
            out.add(c)
    return out


def _check_simplicial(cones):
    for c in cones:
        if rank(list(c)) != len(c):
            raise NotSimplicial(f"cone with rays {sorted(c)} is not simplicial", rays=[list(r) for r in sorted(c)])


def _descend(cones: set[SimplicialCone], prefer_height: bool, steps: list) -> set[SimplicialCone]:
    mult = {c: cone_multiplicity(list(c)) for c in cones}
    metric = sorted(mult.values(), reverse=True)
    while True:
        bad = sorted((c for c in cones if mult[c] > 1), key=sorted)
        if not bad:
            return cones
        sigma = bad[0]
        rays = sorted(sigma)
        p, _ = _stellar_point(rays, prefer_height)
        p = integerize(p)
        cones = stellar_subdivide(cones, p)
        for c in cones:
            if c not in mult:
                mult[c] = cone_multiplicity(list(c))
        new_metric = sorted((mult[c] for c in cones), reverse=True)
        if not new_metric < metric:
            raise RefinementDiverged("multiplicity multiset failed to decrease", cone=[list(r) for r in rays],
                                     point=list(p))
        metric = new_metric
        steps.append((rays, p))


def resolve_unimodular(F: PolyhedralComplex, *, prefer_height: bool = True,
                       check: bool = False) -> tuple[Fan, RefinementReport]:
    """Stellar descent until every cone has multiplicity 1.

    ``prefer_height`` favours points with positive last coordinate, which keeps
    the height-zero part of a cone-over fan untouched whenever possible.
    """
    cones = _max_cones(F)
    _check_simplicial(cones)
    report = RefinementReport(base_cones=_sorted_cones(cones))
    cones = _descend(cones, prefer_height, report.stellar_steps)
    report.preserved_recession = all(p[-1] != 0 for _, p in report.stellar_steps)
    return _fan_from_cones(cones, F.ambient_dim, check), report


def _scale_ray(r: Ray, d: int) -> Ray:
    return integerize([x * d for x in r[:-1]] + [r[-1]])


def nc_decomposition(sigma: PolyhedralComplex, *, max_rounds: int = 8,
                     check: bool = False) -> tuple[int, PolyhedralComplex, RefinementReport]:
    """Rescale, cone over, triangulate and resolve until the slice is integral.

    Returns (d, refined complex of d*sigma, report). Every stellar step and
    base cone in the report is expressed in the coordinates of the final
    cone-over fan.
    """
    from .polyhedra import cone_over

    n1 = sigma.ambient_dim + 1
    d_total = 1
    cur = sigma
    report = RefinementReport()
    cones = None
    for rnd in range(max_rounds):
        d, cur = rescale_to_integral(cur)
        d_total *= d
        if cones is None:
            fan, _ = cone_over(cur, check=False)
            _, simp = simplicialize(fan)
            report.base_cones = simp.base_cones
            cones = {frozenset(c) for c in simp.base_cones}
        elif d > 1:
            report.base_cones = _sorted_cones(frozenset(_scale_ray(r, d) for r in c) for c in report.base_cones)
            report.stellar_steps = [(sorted(_scale_ray(r, d) for r in c), _scale_ray(p, d))
                                    for c, p in report.stellar_steps]
            cones = {frozenset(_scale_ray(r, d) for r in c) for c in cones}
        cones = _descend(cones, True, report.stellar_steps)
        fan = _fan_from_cones(cones, n1)
        cur = slice_fan(fan, 1, check=False)
        if cur.is_integral:
            break
    else:
        raise RefinementDiverged(f"slice still non-integral after {max_rounds} rounds", d=d_total)
    report.d = d_total
    report.preserved_recession = all(p[-1] != 0 for _, p in report.stellar_steps)
    if check:
        from .polyhedra import validate_complex
        cur = validate_complex(cur.cells, ambient_dim=sigma.ambient_dim)
    return d_total, cur, report


def fan_cones(F: PolyhedralComplex) -> set[SimplicialCone]:
    """Maximal cones of a pointed fan as ray sets."""
    return _max_cones(F)


def is_unimodular(F: PolyhedralComplex) -> bool:
    return all(cone_multiplicity(list(c)) == 1 for c in _max_cones(F))
