"""Discrete conformal structures on closed triangulated surfaces.

Build a surface, attach conformal data of one of the seven families, and
realize, normalize, convert, classify or solve for prescribed curvature::

    >>> from dcs import tetrahedron, ConformalData, realize
    >>> S = tetrahedron()
    >>> data = ConformalData("hyperbolic", [0, 0, 0, 0], {e: 2.0 for e in S.edges}, "b2")
    >>> round(realize(S, data).l[(0, 1)], 6)
    1.762747
"""

from .analysis import (
    ClassificationResult,
    HSample,
    case_tests,
    classify_edge,
    edge_provider,
    family_provider,
    sample_H,
    verify_H_pde,
)
from .curvature import gauss_bonnet_residual, total_area, vertex_curvatures
from .gauge import (
    GaugePotential,
    ZGZLYGData,
    convert_to_zgzlyg,
    fix_gauge,
    gauge_potential,
    normalize_alpha,
    reduce_c3_guo_luo,
    zgzlyg_edge_length,
    zgzlyg_lengths,
)
from .geometry import Geometry, inner_angles, is_embeddable, triangle_area
from .solver import SolverConfig, SolveResult, solve_prescribed_curvature
from .structures import (
    ConformalData,
    Family,
    PartialMetric,
    check_compatibility,
    check_conformality,
    coboundary,
    edge_length,
    partial_lengths,
    realize,
    validate_C,
    validate_spherical_mix,
    validate_structure,
)
from .surface import (
    TriangulatedSurface,
    bipyramid,
    build_surface,
    euler_characteristic,
    icosahedron,
    is_sphere,
    octahedron,
    spanning_tree,
    tetrahedron,
    torus7,
)

__version__ = "0.1.0"
