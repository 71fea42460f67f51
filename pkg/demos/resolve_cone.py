"""Unimodular refinement of the cone over a segment of lattice length 3.

The cone spanned by (1, 0) and (1, 3) has multiplicity 3; two stellar
subdivisions bring every cone down to multiplicity 1.
"""
from tropdegen import cone, make_complex, nc_decomposition
from tropdegen.polyhedra import cone_over
from tropdegen.refine import cone_multiplicity, fan_cones

sigma = make_complex([cone([(1, 0), (1, 3)])])
d, refined, report = nc_decomposition(sigma)
print("dilation factor d =", d)
for c, p in report.stellar_steps:
    print(f"  star the cone {sorted(c)} at {p}")
fan, _ = cone_over(refined, check=False)
for c in sorted(fan_cones(fan)):
    print("  cone", sorted(c), "multiplicity", cone_multiplicity(sorted(c)))
# the fan here is its own recession fan, so refining it changes the recession fan too
print("recession fan untouched:", report.preserved_recession)
