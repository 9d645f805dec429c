"""
A curved boundary from a slice family
=====================================

Varying the divisor along a wall direction traces a conic.
"""
from nokholo.io import boundary_string
from nokholo.nok import assemble_slice_body, build_klm_family, classify_boundary, slice_region

fam = build_klm_family(4)
print("epsilon:", fam.epsilon)

grid = [fam.epsilon * k / 6 for k in range(6)]
region = slice_region(fam.surface, fam.base, fam.wall, fam.curve, fam.epsilon, grid)
print("Q(s,t) =", boundary_string(region.boundary_polynomial))

for s, mu in region.samples:
    print(f"  s = {str(s):>5}   mu = {mu}   ~ {float(mu):.9f}")

verdict = classify_boundary(region)
print(verdict.kind.value, "det =", verdict.determinant)

# Same family, larger ambient dimension: nothing changes
for d in (5, 6, 7):
    again = build_klm_family(d)
    r = slice_region(again.surface, again.base, again.wall, again.curve, again.epsilon, grid)
    assert r.boundary_polynomial == region.boundary_polynomial

for s, body in assemble_slice_body(region):
    print(f"  s = {str(s):>5}   area = {body.area()}")
