"""Angle defects and the Gauss-Bonnet audit."""

from __future__ import annotations

import math

import numpy as np

from .errors import NotEmbeddable
from .geometry import Geometry, inner_angles, triangle_area
from .structures import PartialMetric
from .surface import TriangulatedSurface, euler_characteristic


def vertex_curvatures(surface: TriangulatedSurface, metric: PartialMetric, geometry=None) -> np.ndarray:
    """``K_i = 2 pi - (sum of inner angles at i)``."""
    geometry = metric.geometry if geometry is None else Geometry.parse(geometry)
    K = np.full(surface.n_vertices, 2 * math.pi)
    for face in surface.faces:
        try:
            angles = inner_angles(geometry, metric.face_lengths(face))
        except NotEmbeddable as exc:
            raise NotEmbeddable(f"face {face}: {exc}") from exc
        for v, theta in zip(face, angles):
            K[v] -= theta
    return K


def total_area(surface: TriangulatedSurface, metric: PartialMetric, geometry=None) -> float:
    geometry = metric.geometry if geometry is None else Geometry.parse(geometry)
    return math.fsum(triangle_area(geometry, metric.face_lengths(face)) for face in surface.faces)


def gauss_bonnet_residual(surface: TriangulatedSurface, geometry, metric: PartialMetric) -> float:
    """``|sum K + kappa * area - 2 pi chi|`` with ``kappa`` the background curvature."""
    geometry = Geometry.parse(geometry)
    K = vertex_curvatures(surface, metric, geometry)
    area = total_area(surface, metric, geometry) if geometry.curvature else 0.0
    return abs(math.fsum(K) + geometry.curvature * area - 2 * math.pi * euler_characteristic(surface))
