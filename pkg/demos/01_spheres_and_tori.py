"""
Bounds for spheres and tori
===========================

The lower bound comes from products of zero divisors, the upper bound from
the category of the space.  For even spheres they meet.
"""

from tcn import bounds_report, mk_sphere, mk_torus

# even sphere: zcl = n, so lower = n + 1 = n cat + 1 = upper
for n in range(2, 6):
    r = bounds_report(mk_sphere(2), n)
    print("S^2  n=%d  lower %d  upper %d  exact %s" % (n, r.lower, r.upper, r.exact))

# odd sphere: the zero divisors only reach n - 1, the general bound gives n
for n in range(2, 6):
    r = bounds_report(mk_sphere(3), n)
    print("S^3  n=%d  lower %d (%s)  upper %d" % (n, r.lower, r.lower_source, r.upper))

# the torus has twice as many degree-one classes to work with
for n in range(2, 5):
    r = bounds_report(mk_torus(2), n, want_certificate=True)
    print("T^2  n=%d  zcl %d  lower %d  upper %d" % (n, r.zcl.m, r.lower, r.upper))

# a certificate is a list of zero divisors with a nonzero product
cert = bounds_report(mk_torus(2), 3, want_certificate=True).zcl.certificate
for z in cert.factors:
    print("   ", z)
print("product:", cert.product)
print("re-verified:", not cert.verify())
