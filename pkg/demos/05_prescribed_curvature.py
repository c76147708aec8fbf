"""
Solving for prescribed curvature
================================
"""

import numpy as np

from dcs import bipyramid
from dcs.curvature import gauss_bonnet_residual, vertex_curvatures
from dcs.sampling import random_structure
from dcs.solver import solve_prescribed_curvature
from dcs.structures import realize

rng = np.random.default_rng(11)
M = bipyramid(6)

# hyperbolic: aim for the curvature of a hidden structure, start from a perturbed f
hidden, metric = random_structure(M, "b1", rng)
target = vertex_curvatures(M, metric)
start = hidden.with_f(hidden.f + rng.uniform(-0.05, 0.05, M.n_vertices))
res = solve_prescribed_curvature(M, start, target)
print("iterations", res.iterations, "history", ["%.1e" % h for h in res.history])
print("recovered f matches:", np.allclose(res.f, hidden.f, atol=1e-8))

# Euclidean: the same, but only up to a global scale
data, metric = random_structure(M, "A", rng)
target = vertex_curvatures(M, metric)
res = solve_prescribed_curvature(M, data.with_f(np.zeros(M.n_vertices)), target)
solved = realize(M, data.with_f(res.f))
print("mean f:", res.f.mean(), "Gauss-Bonnet:", gauss_bonnet_residual(M, "euclidean", solved))
