"""
The coefficient (1 - n) n!
==========================

In H*(S^2)^{(x)n} take v = u_1 + ... + u_{n-1} - (n - 1) u_n, where u_i is
the generator in slot i.  v is a zero divisor, and its n-th power is a
nonzero multiple of u (x) ... (x) u.  Degree-2 classes commute, so the
Koszul signs are all +1 and the coefficient is a plain integer.
"""

import math

from tcn import mk_sphere, slot_class, tensor_power

base = mk_sphere(2).algebra
u = base.gen("u")

for n in range(2, 6):
    T = tensor_power(base, n)
    v = T.zero()
    for i in range(1, n):
        v = v + slot_class(T, u, i)
    v = v - slot_class(T, u, n).scale(n - 1)
    power = v ** n
    print("n=%d  v^n = %s   (expected %d)" % (n, power, (1 - n) * math.factorial(n)))

# mod 2 the coefficient vanishes for every n >= 2, so F_2 sees less
print("(1 - n) n! mod 2:", [((1 - n) * math.factorial(n)) % 2 for n in range(2, 6)])
