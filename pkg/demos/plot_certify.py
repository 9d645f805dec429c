"""
Certifying a rational complexity function
=========================================

"""
from nokholo.cohomology import CoefficientTable, kunneth_table, parse_factors, parse_ray
from nokholo.holonomic import certify_complexity, guess_ode

table = kunneth_table(parse_factors("P2xP2"), parse_ray("3,1"), 40)
cert = certify_complexity(table, holdout=10)
print(cert.verdict.value)
print("numerator:", {k: str(c) for k, c in cert.numerator.sorted_terms()})
print("denominator:", [str(c) for c in cert.denominator])
print("x-operator order:", cert.x_operator.order, " q-operator order:", cert.q_operator.order)

ell = kunneth_table(parse_factors("ExP1"), parse_ray("0,1"), 40)
print({k: str(c) for k, c in certify_complexity(ell, holdout=10).numerator.sorted_terms()})

# Period 3: fit each residue class separately
quasi = CoefficientTable(40, 0, tuple((n // 3 + 1,) for n in range(41)))
print([str(c) for c in certify_complexity(quasi, (2, 2), 6, modulus=3).denominator])

# Superexponential growth: no operator survives the holdout
wild = [2 ** (n * n) for n in range(25)]
print(guess_ode(wild, 3, 3, 6))
