"""Exact rational and integer linear algebra.

Vectors are tuples, matrices are lists of row lists. Entries are Python ``int``
or :class:`fractions.Fraction`; nothing here ever touches floating point.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

from .errors import DegenerateSimplex, SchemaError, ZeroVector

Rational = Fraction

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+)\s*)?$")


# ---------------------------------------------------------------------------
# Rationals
# ---------------------------------------------------------------------------

def parse_rational(value, path=""):
    """Parse ``"p/q"``, ``"p"`` or an ``int`` into a reduced Fraction."""
    if isinstance(value, bool):
        raise SchemaError(f"expected rational, got {value!r}", path)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if not isinstance(value, str):
        raise SchemaError(f"expected rational string, got {value!r}", path)
    m = _RATIONAL_RE.match(value)
    if m is None:
        raise SchemaError(f"malformed rational {value!r}", path)
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise SchemaError(f"zero denominator in {value!r}", path)
    return Fraction(num, den)


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def lcm(values: Iterable[int]) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), values, 1)


def gcd_all(values: Iterable[int]) -> int:
    return reduce(math.gcd, (abs(int(v)) for v in values), 0)


# ---------------------------------------------------------------------------
# Vectors
# ---------------------------------------------------------------------------

def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def vsub(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def vadd(u: Sequence, v: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def vscale(c, v: Sequence) -> tuple:
    return tuple(c * a for a in v)


def is_zero(v: Sequence) -> bool:
    return all(a == 0 for a in v)


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries."""
    if any(Fraction(a).denominator != 1 for a in v):
        raise ValueError(f"primitive() needs an integer vector, got {v!r}")
    g = gcd_all(v)
    if g == 0:
        raise ZeroVector("zero vector has no primitive direction", vector=list(map(int, v)))
    return tuple(int(a) // g for a in v)


def integerize(v: Sequence) -> tuple[int, ...]:
    """Primitive integer vector on the ray through a nonzero rational vector."""
    fr = [Fraction(a) for a in v]
    den = lcm(a.denominator for a in fr)
    return primitive([int(a * den) for a in fr])


# ---------------------------------------------------------------------------
# Matrices over Q
# ---------------------------------------------------------------------------

def transpose(M: Sequence[Sequence], ncols: int | None = None) -> list[list]:
    if not M:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*M)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)]
            for i in range(len(A))]


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns the nonzero rows and pivots."""
    # Scaling a row does not change the row space, so eliminate over Z and
    # divide by the pivots at the end; ints are far cheaper than Fractions.
    A = []
    for r in rows:
        if all(type(x) is int for x in r):
            A.append(list(r))
            continue
        r = [Fraction(x) for x in r]
        m = 1
        for x in r:
            m = m * x.denominator // math.gcd(m, x.denominator)
        A.append([int(x * m) for x in r])
    if not A:
        return [], []
    ncols = len(A[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][c]
        for i in range(len(A)):
            f = A[i][c]
            if i != r and f != 0:
                row = [p * a - f * b for a, b in zip(A[i], A[r])]
                g = 0
                for x in row:
                    g = math.gcd(g, x)
                A[i] = [x // g for x in row] if g > 1 else row
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    out = []
    for i, c in enumerate(pivots):
        p = A[i][c]
        out.append([Fraction(x, p) for x in A[i]])
    return out, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of {x : rows . x = 0} over Q."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    R, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for i, p in enumerate(pivots):
            x[p] = -R[i][f]
        basis.append(x)
    return basis


def solve(A: Sequence[Sequence], b: Sequence):
    """One solution of A x = b over Q, or None when inconsistent."""
    ncols = len(A[0]) if A else 0
    aug = [list(r) + [bi] for r, bi in zip(A, b)]
    R, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for i, p in enumerate(pivots):
        x[p] = R[i][ncols]
    return x


def in_span(v: Sequence, rows: Sequence[Sequence]) -> bool:
    if is_zero(v):
        return True
    if not rows:
        return False
    return rank(list(rows) + [list(v)]) == rank(rows)


def det(M: Sequence[Sequence]):
    """Determinant by fraction-free Bareiss elimination."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(r) for r in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                val = A[i][j] * A[k][k] - A[i][k] * A[k][j]
                A[i][j] = val / prev if isinstance(val, Fraction) else val // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SnfResult:
    """``U @ M @ V == D`` with U, V unimodular and D in Smith form.

    ``Vinv`` is the inverse of ``V``; its rows give a basis of Z^n adapted to
    the row lattice of M.
    """

    U: list
    D: list
    V: list
    Vinv: list

    @property
    def diagonal(self) -> list[int]:
        k = min(len(self.D), len(self.D[0]) if self.D else 0)
        return [self.D[i][i] for i in range(k)]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)

    @property
    def torsion(self) -> list[int]:
        return [d for d in self.diagonal if d > 1]


def snf(M: Sequence[Sequence[int]]) -> SnfResult:
    """Smith normal form by elementary operations, pivoting on the entry of
    least absolute value."""
    m = len(M)
    n = len(M[0]) if m else 0
    A = [[int(x) for x in row] for row in M]
    U = identity(m)
    V = identity(n)
    Vinv = identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def add_row(src, dst, c):  # row dst += c * row src
        A[dst] = [a + c * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, c):  # col dst += c * col src
        for row in A:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]
        # inverse op on Vinv: row src -= c * row dst
        Vinv[src] = [a - c * b for a, b in zip(Vinv[src], Vinv[dst])]

    t = 0
    while t < min(m, n):
        entries = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j] != 0]
        if not entries:
            break
        _, pi, pj = min(entries)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            done = True
            for i in range(t + 1, m):
                if A[i][t] != 0:
                    q = A[i][t] // A[t][t]
                    add_row(t, i, -q)
                    if A[i][t] != 0:
                        done = False
            for j in range(t + 1, n):
                if A[t][j] != 0:
                    q = A[t][j] // A[t][t]
                    add_col(t, j, -q)
                    if A[t][j] != 0:
                        done = False
            if not done:
                entries = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t] != 0]
                entries += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j] != 0]
                _, pi, pj = min(entries)
                swap_rows(t, pi)
                swap_cols(t, pj)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % A[t][t] != 0), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return SnfResult(U=U, D=A, V=V, Vinv=Vinv)


def integer_kernel(M: Sequence[Sequence[int]], ncols: int) -> list[tuple[int, ...]]:
    """Z-basis of {x in Z^n : M x = 0}."""
    if not M:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    res = snf(M)
    r = res.rank
    return [tuple(res.V[i][c] for i in range(ncols)) for c in range(r, ncols)]


def saturation_basis(rows: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Z-basis of Z^n ∩ span(rows)."""
    rows = [list(map(int, r)) for r in rows if not is_zero(r)]
    if not rows:
        return []
    res = snf(rows)
    return [tuple(res.Vinv[i]) for i in range(res.rank)]


def adapted_basis(rows: Sequence[Sequence[int]], n: int) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """Split a basis of Z^n as (basis of Z^n ∩ span(rows), complement)."""
    rows = [list(map(int, r)) for r in rows if not is_zero(r)]
    if not rows:
        return [], [tuple(int(i == j) for j in range(n)) for i in range(n)]
    res = snf(rows)
    k = res.rank
    return [tuple(res.Vinv[i]) for i in range(k)], [tuple(res.Vinv[i]) for i in range(k, n)]


def lattice_index(rows: Sequence[Sequence[int]]) -> int:
    """Index of the lattice spanned by linearly independent integer rows
    inside its saturation."""
    rows = [list(map(int, r)) for r in rows]
    if not rows:
        return 1
    res = snf(rows)
    if res.rank < len(rows):
        raise DegenerateSimplex("rows are linearly dependent")
    return math.prod(res.diagonal[: len(rows)])


def lattice_volume(vertices: Sequence[Sequence]) -> Fraction:
    """Normalized volume of a simplex w.r.t. the lattice of its affine span.

    The unit simplex of any dimension has volume 1; a lattice segment has its
    lattice length. Rational vertices are allowed.
    """
    verts = [tuple(Fraction(x) for x in v) for v in vertices]
    if not verts:
        raise DegenerateSimplex("empty simplex")
    base = verts[0]
    edges = [vsub(v, base) for v in verts[1:]]
    if not edges:
        return Fraction(1)
    if rank(edges) < len(edges):
        raise DegenerateSimplex("vertices are affinely dependent",
                                vertices=[[format_rational(x) for x in v] for v in verts])
    den = lcm(x.denominator for e in edges for x in e)
    int_edges = [[int(x * den) for x in e] for e in edges]
    return Fraction(lattice_index(int_edges), den ** len(edges))


def quotient_map(span_rows: Sequence[Sequence[int]], n: int):
    """Integer coordinates on Z^n / (Z^n ∩ span(span_rows)).

    Returns a function sending a rational vector to its image in Q^(n-k),
    where the lattice Z^n maps onto Z^(n-k).
    """
    sub, comp = adapted_basis(span_rows, n)
    basis = sub + comp  # rows form a unimodular matrix W
    k = len(sub)
    W_T = transpose(basis)

    def q(v):
        coords = solve(W_T, list(v))
        return tuple(coords[k:])

    return q
