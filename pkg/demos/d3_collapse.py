"""
Rank three orthogonal groups lose their stable range
====================================================

For D_3 and highest weight m * phi_2, the simple reflection tau_2 already
pushes rho + lambda out of the positive cone once m >= 2.
"""

from fractions import Fraction

from borelrange import make_root_datum, weyl, c_big
from borelrange.root_system import eps_to_simple
from borelrange.stable_range import HighestWeight, highest_weight_vector

d = make_root_datum("D", 3)
tau2 = weyl.simple_reflection(d, 2)
print(" m   tau_2(rho + m phi_2)      alpha_2 coeff   C")
for m in range(0, 11):
    v = tuple(r + l for r, l in zip(d.rho, highest_weight_vector(d, [0, m, 0])))
    image = weyl.apply(tau2, v)
    coeff = eps_to_simple(d, image)[1]
    C = c_big(d, HighestWeight.fundamental(3, 2, m))
    print(f"{m:2d}   {str(tuple(str(c) for c in image)):24s}  {str(coeff):>12s}   {C}")

# the coefficient is half of 1 - m/2
assert all(eps_to_simple(d, weyl.apply(tau2, tuple(
    r + l for r, l in zip(d.rho, highest_weight_vector(d, [0, m, 0])))))[1]
    == (1 - Fraction(m, 2)) / 2 for m in range(11))
