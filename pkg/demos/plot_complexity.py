"""
Cohomology tables of multiples of a divisor
===========================================

"""
from nokholo.cohomology import kunneth_table, parse_factors, parse_ray

table = kunneth_table(parse_factors("P2xP2"), parse_ray("3,1"), 8)
for n, row in enumerate(table.entries):
    print(n, row)

# only h^0 is nonzero, and it is a quartic in n
print([table.euler_characteristic(n) for n in range(6)])

ell = kunneth_table(parse_factors("ExP1"), parse_ray("0,1"), 5)
for n, row in enumerate(ell.entries):
    print(n, row)
