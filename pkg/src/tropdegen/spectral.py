"""E_1 bookkeeping for the weight spectral sequence of a strictly semistable degeneration.

Strata X^(j) are indexed by the bounded j-cells of Gamma: one stratum
component, of dimension d - j, per cell. The summand of E_1^{-r, w+r} indexed
by s is H^{w-r-2s}(X^(2s+r))(-r-s). Only the bottom row (all H^0, restriction
maps) and the top row (all top-degree classes, Gysin maps) carry differentials
here; middle rows are dimension counts that bound E_2 from above.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import MissingBettiData, NotACycle, NotTriangulated
from .gamma import GammaComplex
from .homology import ChainComplex, CochainComplex, chain_complex_from_incidence
from .lattice import identity, lattice_volume, matmul, rank, solve, transpose
from .polyhedra import Polyhedron


@dataclass(frozen=True)
class Summand:
    p: int
    q: int
    r: int
    s: int
    j: int  # stratum X^(j)
    i: int  # cohomological degree
    dim: int
    kind: str = "synthesized"  # or "data", "assumed"

    @property
    def weight(self) -> int:
        return self.q

    @property
    def twist(self) -> int:
        return -self.r - self.s


@dataclass
class SSPage:
    d: int
    summands: list[Summand]
    differentials: dict[tuple[int, int], list[list[int]]] = field(default_factory=dict)

    def dim(self, p: int, q: int) -> int:
        return sum(s.dim for s in self.summands if s.p == p and s.q == q)

    def row(self, q: int) -> tuple[int, ...]:
        """Dimensions of E_1^{p,q} for p = -d..d."""
        return tuple(self.dim(p, q) for p in range(-self.d, self.d + 1))

    def trimmed_row(self, q: int) -> tuple[int, ...]:
        row = list(self.row(q))
        while row and row[-1] == 0:
            row.pop()
        while row and row[0] == 0:
            row.pop(0)
        return tuple(row)

    def column(self, p: int) -> tuple[int, ...]:
        return tuple(self.dim(p, q) for q in range(0, 2 * self.d + 1))

    def rows(self) -> dict[int, tuple[int, ...]]:
        return {q: self.row(q) for q in range(0, 2 * self.d + 1)}

    @property
    def assumed(self) -> list[Summand]:
        return [s for s in self.summands if s.kind == "assumed"]

    def extreme_rows(self) -> tuple[int, ...]:
        return (0, 2 * self.d) if self.d else (0,)

    def e2_row(self, q: int) -> tuple[int, ...]:
        """E_2 dimensions of an extreme row, from its attached differentials."""
        if q not in self.extreme_rows():
            raise ValueError(f"row {q} has no differentials; middle rows carry dimensions only")
        out = []
        for p in range(-self.d, self.d + 1):
            n = self.dim(p, q)
            out_rank = _rank(self.differentials.get((q, p)))
            in_rank = _rank(self.differentials.get((q, p - 1)))
            out.append(n - out_rank - in_rank)
        return tuple(out)

    def euler_row(self, q: int, page: int = 1) -> int:
        row = self.row(q) if page == 1 else self.e2_row(q)
        return sum((-1) ** k * x for k, x in enumerate(row))


def _rank(M):
    if not M or not M[0]:
        return 0
    return rank(M)


# ---------------------------------------------------------------------------
# Bounded cells as a Delta-complex
# ---------------------------------------------------------------------------

@dataclass
class RowComplexes:
    chain: ChainComplex  # top row: Gysin maps = simplicial boundary
    cochain: CochainComplex  # bottom row: restriction maps = simplicial coboundary
    cells: dict[int, list]  # bounded Gamma cells per dimension, in basis order
    vertex_order: list  # Gamma 0-cells in orientation order


def bounded_row_complexes(gamma: GammaComplex) -> RowComplexes:
    """Oriented chains on the bounded cells of Gamma, each a simplex ordered by vertex index."""
    base = gamma.base
    cover = gamma.cover
    verts = gamma.cells_of_dim(0, bounded=True)
    vpos = {v: k for k, v in enumerate(verts)}
    tuples = {}
    for c in gamma.bounded_cells:
        P = gamma.polyhedron(c)
        if len(P.vertices) != P.dim + 1:
            raise NotTriangulated(f"bounded cell {list(c)} is not a simplex", cell=list(c))
        vids = []
        for v in P.vertices:
            vi = base.index[Polyhedron([v], ambient_dim=P.ambient_dim)]
            vids.append(vpos[(vi, cover.image(c[0], c[1], vi))])
        tuples[c] = tuple(sorted(vids))
    cells: dict[int, list] = {}
    for c in gamma.bounded_cells:
        cells.setdefault(gamma.dim_of(c), []).append(c)
    for k in cells:
        cells[k].sort(key=lambda c: (tuples[c], c))
    inc = {}
    for c in gamma.bounded_cells:
        t = tuples[c]
        if len(t) < 2:
            continue
        for f in gamma.facets_of[c]:
            ft = tuples[f]
            (pos,) = [k for k in range(len(t)) if t[:k] + t[k + 1:] == ft]
            inc[(c, f)] = (-1) ** pos
    chain = chain_complex_from_incidence(cells, inc)
    return RowComplexes(chain, chain.dual(), cells, verts)


# ---------------------------------------------------------------------------
# E_1 page
# ---------------------------------------------------------------------------

def e1_from_strata(d: int, counts: Mapping[int, int], betti: Mapping[tuple[int, int], int] | None = None, *,
                   middle_rows: bool = True, default_middle: int | None = None) -> SSPage:
    """E_1 page from stratum counts and, for 0 < i < top degree, Betti data.

    ``counts[j]`` is the number of components of X^(j); H^0 and the top
    degree of each are one-dimensional. ``betti[(j, i)]`` is the total
    dimension of H^i(X^(j)).
    """
    betti = dict(betti or {})
    summands = []
    missing = []
    for r in range(-d, d + 1):
        for s in range(max(0, -r), d + 1):
            j = 2 * s + r
            if j > d:
                break
            top = 2 * (d - j)
            for i in range(0, top + 1):
                q = i + 2 * (r + s)
                middle = q not in (0, 2 * d)
                if middle and not middle_rows:
                    continue
                kind = "synthesized"
                if i == 0 or i == top:
                    n = counts.get(j, 0)
                elif (j, i) in betti:
                    n, kind = betti[(j, i)], "data"
                elif counts.get(j, 0) == 0:
                    n = 0
                elif default_middle is not None:
                    n, kind = default_middle, "assumed"
                else:
                    missing.append((j, i))
                    continue
                summands.append(Summand(-r, q, r, s, j, i, n, kind))
    if missing:
        missing = sorted(set(missing))
        raise MissingBettiData(f"Betti numbers needed for H^i(X^(j)) at (j, i) in {missing}",
                               needed=[list(m) for m in missing])
    summands.sort(key=lambda x: (x.q, x.p, x.s))
    return SSPage(d, summands)


def rz_e1_dimensions(gamma: GammaComplex, strata_betti: Mapping[tuple[int, int], int] | None = None, *,
                     middle_rows: bool = True, default_middle: int | None = None) -> SSPage:
    """E_1 page of the degeneration whose dual complex is the bounded part of Gamma."""
    rows = bounded_row_complexes(gamma)
    d = gamma.dim
    counts = {k: len(v) for k, v in rows.cells.items()}
    page = e1_from_strata(d, counts, strata_betti, middle_rows=middle_rows, default_middle=default_middle)
    attach_extreme_differentials(page, rows)
    return page


def attach_extreme_differentials(page: SSPage, rows: RowComplexes) -> None:
    d = page.d
    for p in range(0, d):
        if rows.cochain.size(p) and rows.cochain.size(p + 1):
            page.differentials[(0, p)] = rows.cochain.coboundary(p)
    if d == 0:
        return
    for k in range(1, d + 1):
        if rows.chain.size(k) and rows.chain.size(k - 1):
            page.differentials[(2 * d, -k)] = rows.chain.boundary(k)


# ---------------------------------------------------------------------------
# Monodromy
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NBlock:
    source: Summand
    target: Summand
    power: int

    @property
    def matrix(self) -> list[list[int]]:
        return identity(self.source.dim)


def _summand_at(page: SSPage, r: int, s: int, i: int) -> Summand | None:
    for x in page.summands:
        if x.r == r and x.s == s and x.i == i:
            return x
    return None


def monodromy_power(page: SSPage, k: int = 1) -> list[NBlock]:
    """Nonzero blocks of N^k: identity from the (r, s) summand to the (r - 2k, s + k) summand."""
    out = []
    if k <= 0:
        return out
    for x in page.summands:
        if x.dim == 0 or x.r + x.s < k:
            continue
        y = _summand_at(page, x.r - 2 * k, x.s + k, x.i)
        if y is not None and y.dim:
            out.append(NBlock(x, y, k))
    return out


def monodromy_N(page: SSPage) -> list[NBlock]:
    return monodromy_power(page, 1)


def volume_pairing(gamma: GammaComplex, z1: Mapping | Sequence, z2: Mapping | Sequence,
                   k: int | None = None) -> Fraction:
    """Sum of a_F b_F vol(F) over bounded top cells F, for cycles z1, z2.

    Chains are in the vertex-order orientation of :func:`bounded_row_complexes`;
    a sequence is read in its basis order, a mapping by Gamma cell.
    """
    rows = bounded_row_complexes(gamma)
    k = gamma.dim if k is None else k
    basis = rows.cells.get(k, [])
    a = _as_vector(z1, basis)
    b = _as_vector(z2, basis)
    for z in (a, b):
        if k > 0 and rows.chain.size(k - 1):
            bd = matmul(rows.chain.boundary(k), [[x] for x in z])
            if any(row[0] for row in bd):
                raise NotACycle("chain has nonzero boundary", boundary=[row[0] for row in bd])
    total = Fraction(0)
    for c, x, y in zip(basis, a, b):
        if x and y:
            total += x * y * lattice_volume(gamma.polyhedron(c).vertices)
    return total


def _as_vector(z, basis):
    if isinstance(z, Mapping):
        unknown = set(z) - set(basis)
        if unknown:
            raise ValueError(f"chain uses cells outside the bounded top cells: {sorted(unknown)}")
        return [Fraction(z.get(c, 0)) for c in basis]
    z = list(z)
    if len(z) != len(basis):
        raise ValueError(f"chain has {len(z)} coefficients, expected {len(basis)}")
    return [Fraction(x) for x in z]


# ---------------------------------------------------------------------------
# Monodromy filtration
# ---------------------------------------------------------------------------

@dataclass
class MonodromyFiltration:
    r: int
    blocks: tuple[int, ...]
    dims: dict[int, int]  # dim V_i
    gr: dict[int, int]  # dim V_i / V_{i-1}
    N: list[list[int]]
    bases: dict[int, list[list[Fraction]]]
    axioms: dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.axioms.values())

    def gr_vector(self) -> tuple[int, ...]:
        """gr_i for i = r, r-1, ..., -r."""
        return tuple(self.gr[i] for i in range(self.r, -self.r - 1, -1))


def _span_rank(vectors):
    vectors = [v for v in vectors if any(v)]
    return rank(vectors) if vectors else 0


def _apply(M, v):
    return [sum(M[a][b] * v[b] for b in range(len(v))) for a in range(len(M))]


def _inverse(S):
    n = len(S)
    cols = [solve(S, [int(i == j) for i in range(n)]) for j in range(n)]
    return transpose(cols, n)


def monodromy_filtration(jordan_blocks: Sequence[int], conjugate: Sequence[Sequence[int]] | None = None
                         ) -> MonodromyFiltration:
    """Filtration V_i, -r <= i <= r, of a nilpotent N with the given Jordan block sizes.

    N is built in Jordan form (optionally conjugated by ``conjugate``) and the
    filtration is checked against its defining properties: V_r = V, V_{-r} = 0,
    N V_i inside V_{i-2}, and N^i inducing gr_i -> gr_{-i} isomorphisms.
    """
    blocks = tuple(sorted((int(b) for b in jordan_blocks), reverse=True))
    if any(b < 1 for b in blocks):
        raise ValueError("Jordan block sizes must be positive")
    n = sum(blocks)
    r = max(blocks, default=0)
    N = [[0] * n for _ in range(n)]
    offsets = []
    off = 0
    for m in blocks:
        offsets.append(off)
        for k in range(1, m):
            N[off + k - 1][off + k] = 1  # N e_k = e_{k-1}
        off += m

    def V_basis(i):
        vecs = []
        for off, m in zip(offsets, blocks):
            c = max(0, min(m, (i + m - 1) // 2 + 1))  # e_k has weight 2k - m - 1
            for k in range(c):
                vecs.append([Fraction(int(t == off + k)) for t in range(n)])
        return vecs

    bases = {i: V_basis(i) for i in range(-r - 1, r + 1)}
    if conjugate is not None:
        S = [[Fraction(x) for x in row] for row in conjugate]
        Si = _inverse(S)
        N = matmul(matmul(S, N), Si)
        bases = {i: [_apply(S, v) for v in vs] for i, vs in bases.items()}
    dims = {i: _span_rank(bases[i]) for i in bases}
    gr = {i: dims[i] - dims[i - 1] for i in range(-r, r + 1)}

    def Npow(k):
        M = identity(n)
        for _ in range(k):
            M = matmul(N, M)
        return M

    ax = {}
    ax["top_is_everything"] = dims.get(r, 0) == n
    ax["bottom_is_zero"] = dims[-r] == 0
    ok = True
    for i in range(-r + 1, r + 1):
        lower = bases.get(i - 2, [])
        img = [_apply(N, v) for v in bases[i]]
        if _span_rank(lower + img) != _span_rank(lower):
            ok = False
    ax["N_lowers_by_two"] = ok
    ok = True
    for i in range(1, r + 1):
        Ni = Npow(i)
        if gr[i] != gr[-i]:
            ok = False
            continue
        # well defined: N^i V_{i-1} inside V_{-i-1}
        below = bases[-i - 1]
        if _span_rank(below + [_apply(Ni, v) for v in bases[i - 1]]) != _span_rank(below):
            ok = False
        # onto: N^i V_i + V_{-i-1} = V_{-i}
        if _span_rank(below + [_apply(Ni, v) for v in bases[i]]) != dims[-i]:
            ok = False
    ax["N_power_iso"] = ok
    return MonodromyFiltration(r, blocks, dims, gr, [list(map(Fraction, row)) for row in N], bases, ax)
