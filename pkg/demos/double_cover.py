"""A segment covered twice: Gamma sees a circle where Trop sees an interval.

Over the open edge the stratum has two components a and b which meet over
both endpoints; the parameterizing complex is a circle.
"""
from fractions import Fraction

from tropdegen import GammaCover, Polyhedron, build_gamma, gamma_refinement_check, make_complex
from tropdegen.spectral import rz_e1_dimensions


def cover(points):
    """Two sheets over every point of the open segment, glued over the two ends."""
    cx = make_complex([Polyhedron([(a,), (b,)]) for a, b in zip(points, points[1:])])
    ends = {cx.index[Polyhedron([(points[0],)])], cx.index[Polyhedron([(points[-1],)])]}
    comps = {i: ("v",) if i in ends else ("a", "b") for i in range(len(cx))}
    assign = {}
    for i in cx.cells_of_dim(1):
        for v in cx.facets_of[i]:
            for y in comps[i]:
                assign[(i, y, v)] = "v" if v in ends else y
    return GammaCover(cx, {i: 2 for i in cx.cells_of_dim(1)}, comps, assign)


coarse = cover([0, 1])
g = build_gamma(coarse)
trop = build_gamma(GammaCover.trivial(coarse.base))
print("Betti numbers of Gamma:", g.homology().betti)
print("Betti numbers of Trop: ", trop.homology().betti)

fine = cover([0, Fraction(1, 2), 1])
print("refinement gives the same Gamma:", bool(gamma_refinement_check(coarse, fine)))

page = rz_e1_dimensions(g, default_middle=0)
print("E_1 rows:", page.rows())
print("E_2 bottom row:", page.e2_row(0), " top row:", page.e2_row(2 * page.d))
