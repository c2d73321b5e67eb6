"""
Comparing c(G, V) with C(G, V)
==============================

c(G, V) asks the same positivity question for every weight of the
exterior powers of the nilradical dual tensored with V.  It never exceeds C(G, V).
"""

from borelrange import make_root_datum, c_big, c_small
from borelrange.stable_range import HighestWeight, weights_of_irrep

for kind, n in (("D", 3), ("D", 4), ("C", 3)):
    d = make_root_datum(kind, n)
    for label, hw in (("trivial", HighestWeight.trivial(n)),
                      ("phi_1", HighestWeight.fundamental(n, 1))):
        print(f"{d.name:3s} {label:8s} {len(weights_of_irrep(d, hw)):3d} weights  "
              f"c = {c_small(d, hw):2d}  C = {c_big(d, hw)}")
