"""
Newton-Okounkov bodies of surfaces
==================================

The body of 9f1+3f2 on E x E has an irrational corner.
"""
from nokholo import load_surface
from nokholo.lattice import intersect
from nokholo.nok import FIXTURES, FlagOnSurface, nok_surface_body
from nokholo.svg import body_svg

X = load_surface(FIXTURES / "exe2.json")
B = X.parse("9f1+3f2")
body = nok_surface_body(X, B, FlagOnSurface(X.parse("f1+f2+Delta")))

mu = body.extent
print("t-extent:", mu, "~", mu.to_decimal_string(12))
print("minimal polynomial (ascending):", [str(c) for c in mu.minimal_polynomial()])
print("vertices:", [(str(x), str(y)) for x, y in body.vertices])
print("area:", body.area(), " B^2/2:", intersect(B, B, X) / 2)

S = load_surface(FIXTURES / "blowup.json")
B, C = S.parse("2H-E"), S.parse("H-E")
for point in (None, 0):
    b = nok_surface_body(S, B, FlagOnSurface(C, point))
    print("point", point, "vertices", [(str(x), str(y)) for x, y in b.vertices], "area", b.area())

with open("exe_body.svg", "w") as fh:
    fh.write(body_svg(body))
