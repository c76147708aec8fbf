"""
Removing C and changing variables
=================================

A b2 structure with C = g_i - g_j is the same metric as one with C = 0
after shifting f by g. Normalizing alpha and switching to (u, epsilon, zeta)
are likewise length-preserving.
"""

import numpy as np

from dcs import icosahedron
from dcs.gauge import convert_to_zgzlyg, fix_gauge, gauge_potential, normalize_alpha, zgzlyg_lengths
from dcs.sampling import random_structure
from dcs.structures import realize

rng = np.random.default_rng(3)
M = icosahedron()

data, metric = random_structure(M, "b2", rng)
g = gauge_potential(M, data.C).g
fixed = fix_gauge(M, data)
after = realize(M, fixed)
print("potential g:", np.round(g, 4))
print("max |C'|:", max(abs(v) for v in fixed.C.values()))
print("max length change:", max(abs(metric.l[e] - after.l[e]) for e in M.edges))

data, metric = random_structure(M, "c1", rng)
norm = normalize_alpha(data)
z = convert_to_zgzlyg(norm)
lz = zgzlyg_lengths(M, z)
print("alpha before:", np.round(data.alpha[:5], 3), "after:", norm.alpha[:5])
print("epsilon:", z.epsilon[:5])
print("max length gap after conversion:", max(abs(metric.l[e] - lz[e]) for e in M.edges))
