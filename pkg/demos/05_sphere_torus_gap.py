"""
S^2 and T^2 separated by TC_n
=============================

Both spaces have TC_2 = 3.  For n >= 3 the exact value for S^2 is n + 1,
while the torus already has lower bound 2n - 1.
"""

from tcn import gap_demo

for n in (3, 4, 5):
    rec = gap_demo(n)
    print("n=%d  %s" % (n, rec))
