"""The tropical line x + y + 1 and a conic with one valued coefficient.

Min-plus convention: w lies on Trop(f) when min over terms of val(c_a) + <a, w>
is attained at least twice.
"""
from tropdegen import ValuedPolynomial, balancing_check, tropical_hypersurface
from tropdegen.lattice import format_rational


def show(name, f):
    T = tropical_hypersurface(f)
    print(f"{name}: {len(T.top_cells)} edges, balanced = {bool(balancing_check(T))}")
    for i in T.top_cells:
        c = T.base.cells[i]
        verts = [tuple(format_rational(x) for x in v) for v in c.vertices]
        print(f"  cell {i}: vertices {verts} rays {list(c.rays)} weight {T.weights[i]}")


show("line", ValuedPolynomial.from_pairs([((0, 0), 0), ((1, 0), 0), ((0, 1), 0)]))

# x^2 + xy + y^2 + x + y + t: the constant term gets valuation 1
conic = [((2, 0), 0), ((1, 1), 0), ((0, 2), 0), ((1, 0), 0), ((0, 1), 0), ((0, 0), 1)]
show("conic", ValuedPolynomial.from_pairs(conic))

# a double root gives an edge of weight 2
show("x^2 + 2x + 1", ValuedPolynomial.from_pairs([((2,), 0), ((1,), 0), ((0,), 0)]))
