"""
Negative cosine ratios need an even count per face
==================================================
"""

import numpy as np

from dcs import octahedron
from dcs.errors import CompatibilityViolated
from dcs.structures import ConformalData, Family, realize, validate_spherical_mix

O = octahedron()
f = np.full(O.n_vertices, -0.3)

# all-c3: three negative ratios on every face
data = ConformalData("spherical", f, {e: 1.5 for e in O.edges}, "c3")
try:
    realize(O, data)
except CompatibilityViolated as exc:
    print(f"all-c3 rejected ({exc.reason}) on {len(exc.faces)} of {O.n_faces} faces")

# c3 on the edges around the north pole, c1 elsewhere: each face sees 0 or 2
family = {e: (Family.C3 if 0 in e else Family.C1) for e in O.edges}
eta = {e: (1.5 if 0 in e else 0.5) for e in O.edges}
mixed = ConformalData("spherical", f, eta, family)
print("parity violations:", validate_spherical_mix(O, mixed))
metric = realize(O, mixed)
for e in [(0, 1), (1, 2)]:
    i, j = e
    print(e, family[e].value, "cos d_ij / cos d_ji =", np.cos(metric.d[(i, j)]) / np.cos(metric.d[(j, i)]))
