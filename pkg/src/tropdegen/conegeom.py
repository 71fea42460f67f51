"""Generator/inequality conversions for polyhedral cones.

Brute force over generator subsets. Ample for the handful of generators and
ambient dimensions <= 5 that desk-scale complexes produce.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from .lattice import dot, integerize, is_zero, nullspace, rank, rref


def _span_basis(gens):
    R, _ = rref(gens)
    return R


def facets(gens: tuple[tuple, ...]) -> list[tuple[tuple[int, ...], frozenset[int]]]:
    """Facets of cone(gens) as (inner normal, indices of generators on it).

    The normal lies in span(gens), so it is determined up to positive scaling;
    it is returned as a primitive integer vector.
    """
    # positive rescaling keeps the cone and its facets, and integer work is cheap
    return list(_facets_cached(tuple(_scaled(g) for g in gens)))


def _scaled(g):
    return integerize(g) if not is_zero(g) else tuple(0 for _ in g)


@lru_cache(maxsize=20000)
def _facets_cached(gens):
    if not gens:
        return ()
    B = [integerize(b) for b in _span_basis(gens)]
    k = len(B)
    if k == 0:
        return ()
    gram = [[dot(b, g) for b in B] for g in gens]  # row i: <b_*, g_i>
    seen = {}
    for S in combinations(range(len(gens)), k - 1):
        rows = [gram[i] for i in S]
        if rows and rank(rows) < k - 1:
            continue
        ns = nullspace(rows, k)
        if len(ns) != 1:
            continue
        c = integerize(ns[0])
        f = [sum(ci * b[j] for ci, b in zip(c, B)) for j in range(len(B[0]))]
        vals = [dot(f, g) for g in gens]
        if any(v < 0 for v in vals) and any(v > 0 for v in vals):
            continue
        if all(v <= 0 for v in vals):
            f = [-x for x in f]
            vals = [-v for v in vals]
        zero = frozenset(i for i, v in enumerate(vals) if v == 0)
        if len(zero) == len(gens) or zero in seen:
            continue
        zero_rank = rank([gens[i] for i in zero]) if zero else 0
        if zero_rank != k - 1:
            continue
        seen[zero] = integerize(f)
    return tuple((normal, zero) for zero, normal in sorted(seen.items(), key=lambda kv: sorted(kv[0])))


def faces(gens: tuple[tuple, ...]) -> list[frozenset[int]]:
    """All faces of cone(gens), each given by the generators lying on it.

    Includes the whole cone and the minimal face (its lineality space, which is
    the empty set of generators for a pointed cone).
    """
    found = {frozenset(range(len(gens)))}
    frontier = [z for _, z in facets(gens)]
    found.update(frontier)
    facet_sets = list(frontier)
    while frontier:
        nxt = []
        for F in frontier:
            for G in facet_sets:
                H = F & G
                if H not in found:
                    found.add(H)
                    nxt.append(H)
        frontier = nxt
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def lineality_generators(gens) -> frozenset[int]:
    """Indices of generators lying in the lineality space of cone(gens)."""
    fs = facets(gens)
    out = frozenset(range(len(gens)))
    for _, z in fs:
        out &= z
    return out


def cone_from_inequalities(eqs, ineqs, m):
    """Generators of {x in R^m : eqs . x = 0, ineqs . x >= 0}.

    Returns (lineality basis, extreme rays of the pointed part), all as
    primitive integer vectors.
    """
    eqs = [_scaled(e) for e in eqs]
    ineqs = [_scaled(a) for a in ineqs]
    lin = nullspace(eqs + ineqs, m)
    lin = [integerize(v) for v in lin]
    base_eqs = eqs + [list(v) for v in lin]
    sub = nullspace(base_eqs, m)
    d = len(sub)
    if d == 0:
        return lin, []
    rays = set()
    active = [a for a in ineqs if not is_zero(a)]
    if d == 1:
        v = integerize(sub[0])
        for cand in (v, [-x for x in v]):
            if all(dot(a, cand) >= 0 for a in active):
                rays.add(integerize(cand))
        return lin, sorted(rays)
    for S in combinations(range(len(active)), d - 1):
        ns = nullspace(base_eqs + [active[i] for i in S], m)
        if len(ns) != 1:
            continue
        v = integerize(ns[0])
        vals = [dot(a, v) for a in active]
        if all(x >= 0 for x in vals):
            rays.add(integerize(v))
        elif all(x <= 0 for x in vals):
            rays.add(integerize([-x for x in v]))
    return lin, sorted(rays)
