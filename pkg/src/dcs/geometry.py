"""Triangle trigonometry in the three constant-curvature model spaces.

Lengths are geodesic lengths (radians of arc on the unit sphere). Angles are
returned in the order ``(theta_i, theta_j, theta_k)`` for a triangle given as
``(l_ij, l_jk, l_ki)``: ``theta_i`` sits between ``l_ij`` and ``l_ki``.
"""

from __future__ import annotations

import enum
import math

from .errors import NonPositiveLength, NotEmbeddable

# cosine arguments this far outside [-1, 1] are clamped; beyond it they are rejected
CLAMP_TOL = 1e-12


class Geometry(enum.Enum):
    EUCLIDEAN = "euclidean"
    HYPERBOLIC = "hyperbolic"
    SPHERICAL = "spherical"

    @property
    def curvature(self) -> int:
        return {"euclidean": 0, "hyperbolic": -1, "spherical": 1}[self.value]

    @classmethod
    def parse(cls, value) -> "Geometry":
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())


def _check_positive(t):
    if len(t) != 3:
        raise ValueError("a triangle has three edge lengths")
    if not all(math.isfinite(x) and x > 0 for x in t):
        raise NonPositiveLength(f"edge lengths must be positive and finite, got {tuple(t)}")


def is_embeddable(geometry: Geometry, t) -> bool:
    """Strict triangle inequalities; on the sphere also lengths < pi and perimeter < 2 pi."""
    geometry = Geometry.parse(geometry)
    _check_positive(t)
    a, b, c = t
    if not (a < b + c and b < c + a and c < a + b):
        return False
    if geometry is Geometry.SPHERICAL:
        return max(a, b, c) < math.pi and a + b + c < 2 * math.pi
    return True


def _safe_acos(x: float) -> float:
    if x > 1.0:
        if x - 1.0 > CLAMP_TOL:
            raise NotEmbeddable(f"cosine {x!r} outside [-1, 1]")
        x = 1.0
    elif x < -1.0:
        if -1.0 - x > CLAMP_TOL:
            raise NotEmbeddable(f"cosine {x!r} outside [-1, 1]")
        x = -1.0
    return math.acos(x)


def _angle(geometry: Geometry, adj1: float, adj2: float, opp: float) -> float:
    if geometry is Geometry.EUCLIDEAN:
        c = (adj1 * adj1 + adj2 * adj2 - opp * opp) / (2.0 * adj1 * adj2)
    elif geometry is Geometry.HYPERBOLIC:
        c = (math.cosh(adj1) * math.cosh(adj2) - math.cosh(opp)) / (math.sinh(adj1) * math.sinh(adj2))
    else:
        c = (math.cos(opp) - math.cos(adj1) * math.cos(adj2)) / (math.sin(adj1) * math.sin(adj2))
    return _safe_acos(c)


def inner_angles(geometry: Geometry, t) -> tuple[float, float, float]:
    """Inner angles ``(theta_i, theta_j, theta_k)`` of the triangle ``(l_ij, l_jk, l_ki)``."""
    geometry = Geometry.parse(geometry)
    if not is_embeddable(geometry, t):
        raise NotEmbeddable(f"{geometry.value} triangle {tuple(t)} is not embeddable")
    l_ij, l_jk, l_ki = t
    return (
        _angle(geometry, l_ij, l_ki, l_jk),
        _angle(geometry, l_jk, l_ij, l_ki),
        _angle(geometry, l_ki, l_jk, l_ij),
    )


def triangle_area(geometry: Geometry, t) -> float:
    """Heron's formula in the plane, angle defect / excess otherwise."""
    geometry = Geometry.parse(geometry)
    if geometry is Geometry.EUCLIDEAN:
        if not is_embeddable(geometry, t):
            raise NotEmbeddable(f"euclidean triangle {tuple(t)} is not embeddable")
        # numerically stable Heron (Kahan): sort a >= b >= c
        a, b, c = sorted(t, reverse=True)
        p = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c))
        return 0.25 * math.sqrt(max(p, 0.0))
    angles = inner_angles(geometry, t)
    if geometry is Geometry.HYPERBOLIC:
        return math.pi - sum(angles)
    return sum(angles) - math.pi
