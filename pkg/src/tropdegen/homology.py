"""Chain complexes over Z with rational Betti numbers and integral torsion."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Hashable, Iterable, Sequence

from .errors import NotSimplicial
from .lattice import matmul, rank, snf, transpose


@dataclass
class ChainComplex:
    """Free chain groups C_k of the given sizes with boundaries d_k: C_k -> C_{k-1}.

    ``boundaries[k]`` is a sizes[k-1] x sizes[k] integer matrix. Missing
    entries are zero maps.
    """

    sizes: dict[int, int]
    boundaries: dict[int, list[list[int]]] = field(default_factory=dict)
    labels: dict[int, list] = field(default_factory=dict)

    @property
    def degrees(self) -> range:
        ks = [k for k, n in self.sizes.items() if n]
        if not ks:
            return range(0)
        return range(min(0, min(ks)), max(ks) + 1)

    def size(self, k: int) -> int:
        return self.sizes.get(k, 0)

    def boundary(self, k: int) -> list[list[int]]:
        if k in self.boundaries:
            return self.boundaries[k]
        return [[0] * self.size(k) for _ in range(self.size(k - 1))]

    def rank_boundary(self, k: int) -> int:
        if not self.size(k) or not self.size(k - 1):
            return 0
        return rank(self.boundary(k))

    def betti(self, k: int) -> int:
        return self.size(k) - self.rank_boundary(k) - self.rank_boundary(k + 1)

    def betti_numbers(self) -> list[int]:
        return [self.betti(k) for k in self.degrees]

    def torsion(self, k: int) -> list[int]:
        """Torsion coefficients of H_k, from the Smith form of d_{k+1}."""
        if not self.size(k + 1) or not self.size(k):
            return []
        return [x for x in snf(self.boundary(k + 1)).diagonal if x > 1]

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in self.sizes.items())

    def check_d_squared(self) -> bool:
        for k in self.degrees:
            if self.size(k) and self.size(k - 1) and self.size(k - 2):
                prod = matmul(self.boundary(k - 1), self.boundary(k))
                if any(x for row in prod for x in row):
                    return False
        return True

    def dual(self) -> "CochainComplex":
        cob = {k - 1: transpose(self.boundary(k), self.size(k))
               for k in self.boundaries}
        return CochainComplex(dict(self.sizes), cob, dict(self.labels))


@dataclass
class CochainComplex:
    """Cochain groups C^k with coboundaries delta_k: C^k -> C^{k+1} (a sizes[k+1] x sizes[k] matrix)."""

    sizes: dict[int, int]
    coboundaries: dict[int, list[list[int]]] = field(default_factory=dict)
    labels: dict[int, list] = field(default_factory=dict)

    def size(self, k: int) -> int:
        return self.sizes.get(k, 0)

    def coboundary(self, k: int) -> list[list[int]]:
        if k in self.coboundaries:
            return self.coboundaries[k]
        return [[0] * self.size(k) for _ in range(self.size(k + 1))]

    def rank_coboundary(self, k: int) -> int:
        if not self.size(k) or not self.size(k + 1):
            return 0
        return rank(self.coboundary(k))

    def betti(self, k: int) -> int:
        return self.size(k) - self.rank_coboundary(k) - self.rank_coboundary(k - 1)

    def betti_numbers(self) -> list[int]:
        ks = [k for k, n in self.sizes.items() if n]
        if not ks:
            return []
        return [self.betti(k) for k in range(min(0, min(ks)), max(ks) + 1)]


@dataclass(frozen=True)
class HomologyResult:
    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]

    def to_dict(self) -> dict:
        return {"betti": list(self.betti), "torsion": [list(t) for t in self.torsion]}


def homology_of(C: ChainComplex) -> HomologyResult:
    ks = list(C.degrees)
    return HomologyResult(tuple(C.betti(k) for k in ks), tuple(tuple(C.torsion(k)) for k in ks))


def chain_complex_from_incidence(cells_by_dim: dict[int, list[Hashable]],
                                 incidence: dict[tuple[Hashable, Hashable], int]) -> ChainComplex:
    """Assemble boundary matrices from signed incidences [cell : facet]."""
    pos = {k: {c: i for i, c in enumerate(cs)} for k, cs in cells_by_dim.items()}
    sizes = {k: len(cs) for k, cs in cells_by_dim.items()}
    bd = {}
    for k, cs in cells_by_dim.items():
        if k - 1 not in cells_by_dim or not cs:
            continue
        M = [[0] * len(cs) for _ in cells_by_dim[k - 1]]
        for (c, f), s in incidence.items():
            if c in pos[k] and f in pos[k - 1]:
                M[pos[k - 1][f]][pos[k][c]] += s
        bd[k] = M
    return ChainComplex(sizes, bd, {k: list(cs) for k, cs in cells_by_dim.items()})


def simplicial_chain_complex(simplices: Iterable[Sequence[Hashable]]) -> ChainComplex:
    """Oriented chain complex of a simplicial (or Delta-) complex.

    Each listed vertex tuple is one cell, oriented by increasing vertex order;
    listing the same vertex set twice gives two parallel cells, as in a
    multigraph. Missing faces are synthesized. A face vertex set shared by
    several cells is ambiguous and rejected.
    """
    listed = [tuple(sorted(s)) for s in simplices]
    for s in listed:
        if len(set(s)) != len(s):
            raise NotSimplicial(f"simplex {list(s)} repeats a vertex", simplex=list(s))
        if not s:
            raise NotSimplicial("empty simplex")
    count: dict[tuple, int] = {}
    for s in listed:
        count[s] = count.get(s, 0) + 1
    cells: dict[int, list] = {}
    for s, m in sorted(count.items(), key=lambda kv: (len(kv[0]), kv[0])):
        for r in range(m):
            cells.setdefault(len(s) - 1, []).append((s, r))
    needed = set()
    for s in count:
        for k in range(1, len(s)):
            needed.update(combinations(s, k))
    for f in sorted(needed - set(count), key=lambda t: (len(t), t)):
        count[f] = 1
        cells.setdefault(len(f) - 1, []).append((f, 0))
    for k in cells:
        cells[k].sort()
    incidence = {}
    for k, cs in cells.items():
        if k == 0:
            continue
        for c in cs:
            s = c[0]
            for t in range(len(s)):
                f = s[:t] + s[t + 1:]
                if count[f] > 1:
                    raise NotSimplicial(f"face {list(f)} of {list(s)} is shared by several cells", face=list(f))
                incidence[(c, (f, 0))] = incidence.get((c, (f, 0)), 0) + (-1) ** t
    return chain_complex_from_incidence(cells, incidence)


def homology(simplices: Iterable[Sequence[Hashable]]) -> HomologyResult:
    return homology_of(simplicial_chain_complex(simplices))
