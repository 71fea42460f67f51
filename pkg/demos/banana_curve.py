"""Two rational components meeting in three points.

The dual graph is a banana with three edges, so b_1 = 2. The weight spectral
sequence puts H^1 in weights 0 and 2 and nothing in weight 1.
"""
from tropdegen import DualGraphCurve, curve_ss, tropical_jacobian

G = DualGraphCurve([0, 0], [(0, 1, 1), (0, 1, 2), (0, 1, 3)])
rep = curve_ss(G)
print("E_1 rows:")
for q, row in rep.page.rows().items():
    print(f"  q = {q}: {row}")
print("graded H^1 (weights 0, 1, 2):", rep.graded_h1, " total", rep.total_h1)
J = tropical_jacobian(G)
print("Gram matrix of the length pairing:", [[str(x) for x in r] for r in J.gram])
print("positive definite:", J.positive_definite, " volume:", J.volume)

# a smooth genus 2 component contributes only to the middle weight
print("single genus-2 vertex:", curve_ss(DualGraphCurve([2], [])).graded_h1)
