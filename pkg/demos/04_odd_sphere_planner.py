"""
A motion planner on S^3
=======================

Given n points on an odd sphere, all paths start at x_1.  Path i runs
along the short great-circle arc to x_i, or, when x_i = -x_1, along the
half circle in the direction of the tangent field V.  The domain of the
planner is the number of antipodes of x_1.
"""

import numpy as np

from tcn import continuity_probe, plan
from tcn.sphere_planner import random_point

rng = np.random.default_rng(7)
x1 = random_point(rng, 3)
config = [x1, random_point(rng, 3), -x1, x1.copy()]

p = plan(config, 3, samples=20)
print("domain", p.domain, "of", p.n)
print("endpoint residuals", p.endpoint_residuals(config))
print("section check problems:", p.section_violations(config))

# the antipodal path passes through V(x_1) halfway
half = p.paths[2].samples[10]
print("midpoint of path 3 vs V(x_1):", np.linalg.norm(half - np.array([-x1[1], x1[0], -x1[3], x1[2]])))

# nearby configurations in the same domain give nearby plans
rep = continuity_probe(3, 3, trials=200, seed=1)
print(rep.as_dict())
