"""
Choice of coefficient field
===========================

The zero-divisor cup-length depends on the field.  For S^2 and n = 2 the
square of 1 (x) u - u (x) 1 is -2 u (x) u, which is zero mod 2.
"""

from tcn import FieldSpec, bounds_report, mk_rp, mk_sphere

for field in (FieldSpec.rationals(), FieldSpec.prime(2), FieldSpec.prime(3)):
    r = bounds_report(mk_sphere(2, field), 2)
    print("S^2 over %-5s zcl %d  lower %d  upper %d" % (field, r.zcl.m, r.lower, r.upper))

# real projective spaces are only interesting mod 2
for m in (2, 3):
    r = bounds_report(mk_rp(m), 2)
    print("RP^%d over %s zcl %d  lower %d  upper %d" % (m, r.field, r.zcl.m, r.lower, r.upper))
