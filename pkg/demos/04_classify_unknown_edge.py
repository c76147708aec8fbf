"""
Recognizing a family from partial lengths alone
===============================================

The classifier only sees a callable (f_i, f_j) -> (d_ij, d_ji). It
decides between the two cases from dH/df_i, then fits the constants.
"""

from dcs.analysis import classify_edge, family_provider, midpoint_provider, probe_grid, sample_H, verify_H_pde
from dcs.errors import NotClassifiable

box = ((-0.35, -0.25), (-0.65, -0.55))
unknown = family_provider("b1", 1.0, -1.0, 2.0)
res = classify_edge(unknown, "hyperbolic", box)
print(res.to_json())

# the same box with partial lengths split evenly
fake = midpoint_provider("b1", 1.0, -1.0, 2.0)
print("midpoint residuals:", verify_H_pde(sample_H(fake, "hyperbolic", probe_grid(box))))
try:
    classify_edge(fake, "hyperbolic", box)
except NotClassifiable as exc:
    print("midpoint rule:", exc)

res = classify_edge(family_provider("c4", eta=1.5, c_ij=0.1), "spherical", ((-0.15, -0.05), (-0.15, -0.05)))
print(res.family.long_name, "C_ij =", round(res.C_ij, 8), "eta =", round(res.eta, 8))
