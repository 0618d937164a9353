"""Reference values used by the validation suite.

The closed forms of the first nine eigenvalue coefficients, as rational
combinations of negative pi-powers (pi-exponent -> coefficient).  The
coefficient recursion must reproduce these exactly.
"""
from __future__ import annotations

from gmpy2 import mpq

K_PI_FORMS = [
    {0: mpq(1, 2)},
    {1: mpq(1)},
    {1: mpq(1), 2: mpq(-2)},
    {1: mpq(7, 6), 2: mpq(-6), 3: mpq(8)},
    {1: mpq(1), 2: mpq(-35, 3), 3: mpq(40), 4: mpq(-40)},
    {1: mpq(43, 40), 2: mpq(-19), 3: mpq(116), 4: mpq(-280), 5: mpq(224)},
    {1: mpq(7, 6), 2: mpq(-5149, 180), 3: mpq(790, 3), 4: mpq(-3260, 3),
     5: mpq(2016), 6: mpq(-1344)},
    {1: mpq(117, 112), 2: mpq(-799, 20), 3: mpq(7762, 15), 4: mpq(-3164),
     5: mpq(29456, 3), 6: mpq(-14784), 7: mpq(8448)},
    {1: mpq(1), 2: mpq(-8843, 168), 3: mpq(16541, 18), 4: mpq(-23147, 3),
     5: mpq(34944), 6: mpq(-86688), 7: mpq(109824), 8: mpq(-54912)},
]
