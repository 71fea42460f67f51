"""Valuation of j for a nodal genus one curve equals minus the loop length."""
from fractions import Fraction

from tropdegen import DualGraphCurve, val_j

for a in (1, 3, 5, Fraction(7, 2)):
    print(f"loop of length {a}: val(j) = {val_j(DualGraphCurve([0], [(0, 0, a)]))}")

# a cycle of three rational curves behaves like a loop of total length 3
tri = DualGraphCurve([0, 0, 0], [(0, 1, 1), (1, 2, 1), (2, 0, 1)])
print("triangle of unit edges: val(j) =", val_j(tri))
