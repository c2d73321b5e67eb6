"""
Weyl group elements sorted by length
====================================

Breadth-first search from the identity splits W into the strata W^q.
The sizes are palindromic, and their total is the group order.
"""

import numpy as np

from borelrange import make_root_datum, weyl

d = make_root_datum("D", 5)
strata = weyl.enumerate_strata(d, d.num_positive_roots)
counts = np.array(strata.counts())
print(d.name, "|W^q| =", counts.tolist())
print("total", counts.sum(), "group order", weyl.group_order(d))
print("palindromic:", bool((counts == counts[::-1]).all()))

# a crude bar chart
for q, c in enumerate(counts):
    print(f"{q:3d} {'#' * int(60 * c / counts.max())}")

# every element at depth q really has q inversions
perm, signs, depth = strata.flat()
print("depth equals inversion count:",
      bool(np.array_equal(weyl.lengths_of_rows(d, perm, signs), depth)))
