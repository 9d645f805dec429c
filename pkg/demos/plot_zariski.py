"""
Zariski decomposition on the blow-up of the plane
=================================================

"""
from nokholo import load_surface
from nokholo.nok import FIXTURES
from nokholo.zariski import zariski_decompose

S = load_surface(FIXTURES / "blowup.json")

for text in ["H", "H+2E", "3H+E", "2H-E"]:
    B = S.parse(text)
    dec = zariski_decompose(S, B)
    neg = " + ".join(f"{c}*{S.curve_name(i)}" for i, c in dec.negative_part) or "0"
    print(f"{text:>6} = ({S.format(dec.positive_part)}) + ({neg})")

# E x E has no negative curves, so every pseudoeffective class is nef
X = load_surface(FIXTURES / "exe2.json")
print(zariski_decompose(X, X.parse("9f1+3f2")).negative_part)
