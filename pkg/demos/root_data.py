"""
Root data for the classical types
=================================

Simple roots, rho and the fundamental weights in epsilon coordinates,
and the change of basis to simple-root coordinates.
"""

from borelrange import make_root_datum
from borelrange.root_system import eps_to_simple, weight_to_json

for kind, n in (("D", 4), ("C", 3), ("A", 3)):
    d = make_root_datum(kind, n)
    print(d.name, "with", d.num_positive_roots, "positive roots")
    for i, alpha in enumerate(d.simple_roots, start=1):
        print(f"  alpha_{i} = {weight_to_json(alpha)}")
    print("  rho =", weight_to_json(d.rho))
    # in the simple basis rho has strictly positive coordinates
    print("  rho in simple coordinates:", weight_to_json(eps_to_simple(d, d.rho)))
    for k, phi in enumerate(d.fundamental_weights, start=1):
        print(f"  phi_{k} = {weight_to_json(phi)}")
    print()
