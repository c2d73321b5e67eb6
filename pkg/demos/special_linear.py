"""
Special linear groups
=====================

For type A the trivial constant grows like n/2, while the symmetric
powers m * phi_1 drive C down to zero for moderate m.
"""

from borelrange import sl_remark_check

for n in range(1, 7):
    r = sl_remark_check(n)
    print(f"SL_{n + 1}: C(trivial) = {r.c_trivial_literal}, candidate readings {r.readings}, "
          f"least m with C(m phi_1) = 0: {r.sym_threshold}")
