"""
The constant C(G, V) for orthogonal and symplectic groups
=========================================================

C(G, V) is the largest q such that every element of length q keeps
rho + lambda strictly inside the positive cone.  For type D it sits
between n-2 and n-1, and for type C it is n-1 whatever the weight.
"""

import itertools

from borelrange import make_root_datum, c_big, range_report

for n in range(3, 7):
    so = c_big(make_root_datum("D", n), [0] * n)
    sp = c_big(make_root_datum("C", n), [0] * n)
    print(f"n = {n}: C(D_n, trivial) = {so}, C(C_n, trivial) = {sp}")

# spread over small highest weights of D_5
d = make_root_datum("D", 5)
values = {c_big(d, hw) for hw in itertools.product(range(3), repeat=5)}
print("C(D_5, lambda) over a_k <= 2:", sorted(values))

# one full report, including the element that breaks the next stratum
r = range_report(d, [0, 1, 0, 0, 0])
print(r.to_json())
