"""Reparameterizations that leave the induced edge lengths unchanged.

* :func:`normalize_alpha` rescales ``f`` so that ``alpha`` only takes the
  values -1, 0, 1 (families A, b1, c1, c3).
* :func:`fix_gauge` absorbs an exact ``C`` into ``f`` and ``eta`` on a
  sphere (families b2, c2, c4).
* :func:`convert_to_zgzlyg` rewrites A / b1 / c1 in the ``(u, epsilon,
  zeta)`` form used by vertex-scaling and circle-packing codes.
* :func:`reduce_c3_guo_luo` matches a c3 edge with one of the six
  generalized hyperbolic cosine laws.

The ``eta -> zeta`` map of :func:`convert_to_zgzlyg`
----------------------------------------------------
With ``e^f = r`` (alpha 0) and ``e^u = r``, both hyperbolic formulas are
``1 + eta r_i r_j`` against ``1 + 4 zeta r_i r_j``. With ``e^f = sinh r``
(alpha 1) or ``tanh r`` (alpha -1) and ``e^u = tanh(r/2)`` the identities
``(1 + t^2)/(1 - t^2) = cosh r`` and ``2t/(1 - t^2) = sinh r`` (resp. the
``1 + t^2`` versions giving ``1/cosh r`` and ``tanh r``) turn the
``4 zeta e^{u_i+u_j}`` term into ``zeta e^{f_i+f_j}`` times ``2^k`` where
``k`` counts the endpoints with ``epsilon = 0``. The spherical case is the
same with ``tan(r/2)``. Hence ``zeta_ij = eta_ij / 2^k`` in every geometry
(checked numerically at random points for all nine sign pairs).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DomainViolation,
    InconsistentCocycle,
    NoRealLength,
    NotSimplyConnected,
    UnsupportedSignPattern,
    WrongFamily,
)
from .geometry import Geometry
from .structures import ConformalData, Family, _length_value, validate_C
from .surface import TriangulatedSurface, edge_key, is_sphere, spanning_tree

POTENTIAL_TOL = 1e-10


def normalize_alpha(data: ConformalData) -> ConformalData:
    """Rescale so every ``alpha`` is -1, 0 or 1; lengths are unchanged.

    ``f_i`` moves by ``log|alpha_i| / 2`` where ``alpha_i != 0`` and
    ``eta_ij`` absorbs the change of ``e^{f_i + f_j}``.
    """
    fams = data.families()
    if not all(t.uses_alpha for t in fams):
        raise WrongFamily(f"alpha normalization needs A, b1, c1 or c3, got {sorted(t.value for t in fams)}")
    out = data.copy()
    if data.alpha is None:
        return out
    alpha = data.alpha
    nz = alpha != 0
    shift = np.zeros_like(data.f)
    shift[nz] = 0.5 * np.log(np.abs(alpha[nz]))
    out.f = data.f + shift
    out.alpha = np.sign(alpha)
    out.eta = {(i, j): v * math.exp(-shift[i] - shift[j]) for (i, j), v in data.eta.items()}
    return out


@dataclass(frozen=True)
class GaugePotential:
    g: np.ndarray
    root: int = 0


def gauge_potential(surface: TriangulatedSurface, C: dict, root: int = 0) -> GaugePotential:
    """``g`` with ``C_ij = g_i - g_j`` and ``g_root = 0``, by tree integration.

    Raises
    ------
    NotSimplyConnected
        The surface is not a sphere.
    InconsistentCocycle
        ``C`` is not antisymmetric with vanishing face sums, or some
        non-tree edge disagrees with the integrated potential.
    """
    if not is_sphere(surface):
        raise NotSimplyConnected("gauge fixing needs a simply connected (chi = 2) surface")
    bad = validate_C(surface, C)
    if bad:
        raise InconsistentCocycle("; ".join(f"{v.kind} at {v.where}: {v.detail}" for v in bad))
    tree = spanning_tree(surface, root)
    g = np.zeros(surface.n_vertices)
    for v in tree.order[1:]:
        p = tree.parent[v]
        g[v] = g[p] - C[(p, v)]
    for i, j in surface.oriented_edges:
        if abs(C[(i, j)] - (g[i] - g[j])) > POTENTIAL_TOL:
            raise InconsistentCocycle(f"C{(i, j)} = {C[(i, j)]!r} but g_i - g_j = {g[i] - g[j]!r}")
    return GaugePotential(g=g, root=root)


def fix_gauge(surface: TriangulatedSurface, data: ConformalData, root: int = 0) -> ConformalData:
    """Remove ``C`` by ``f -> f + g`` and ``eta_ij -> eta_ij e^{-g_i - g_j}``."""
    fams = data.families()
    if not all(t.uses_C for t in fams):
        raise WrongFamily(f"gauge fixing needs b2, c2 or c4, got {sorted(t.value for t in fams)}")
    C = data.C if data.C is not None else {e: 0.0 for e in surface.oriented_edges}
    g = gauge_potential(surface, C, root).g
    out = data.copy()
    out.f = data.f + g
    out.eta = {(i, j): v * math.exp(-g[i] - g[j]) for (i, j), v in data.eta.items()}
    out.C = {e: 0.0 for e in surface.oriented_edges}
    return out


# ---------------------------------------------------------------------------
# (u, epsilon, zeta) parameterization

@dataclass
class ZGZLYGData:
    geometry: Geometry
    u: np.ndarray
    epsilon: np.ndarray
    zeta: dict

    def __post_init__(self):
        self.geometry = Geometry.parse(self.geometry)
        self.u = np.asarray(self.u, dtype=float)
        self.epsilon = np.asarray(self.epsilon, dtype=int)
        if not np.all(np.isin(self.epsilon, (-1, 0, 1))):
            raise ValueError("epsilon must take values in {-1, 0, 1}")
        self.zeta = {edge_key(*e): float(v) for e, v in self.zeta.items()}


def zgzlyg_length_value(geometry, u_i, u_j, eps_i, eps_j, zeta) -> float:
    """``l^2``, ``cosh l`` or ``cos l`` of the ``(u, epsilon, zeta)`` form."""
    geometry = Geometry.parse(geometry)
    e = math.exp(u_i + u_j)
    ei, ej = eps_i * math.exp(2 * u_i), eps_j * math.exp(2 * u_j)
    if geometry is Geometry.EUCLIDEAN:
        return 2 * zeta * e + ei + ej
    if geometry is Geometry.HYPERBOLIC:
        return (4 * zeta * e + (1 + ei) * (1 + ej)) / ((1 - ei) * (1 - ej))
    return (-4 * zeta * e + (1 - ei) * (1 - ej)) / ((1 + ei) * (1 + ej))


def zgzlyg_edge_length(geometry, u_i, u_j, eps_i, eps_j, zeta) -> float:
    geometry = Geometry.parse(geometry)
    x = zgzlyg_length_value(geometry, u_i, u_j, eps_i, eps_j, zeta)
    if geometry is Geometry.EUCLIDEAN:
        if not x > 0:
            raise NoRealLength(f"l^2 = {x!r}")
        return math.sqrt(x)
    if geometry is Geometry.HYPERBOLIC:
        if not x > 1:
            raise NoRealLength(f"cosh l = {x!r}")
        return math.acosh(x)
    if not -1 < x < 1:
        raise NoRealLength(f"cos l = {x!r}")
    return math.acos(x)


def zgzlyg_lengths(surface: TriangulatedSurface, z: ZGZLYGData) -> dict:
    return {
        (i, j): zgzlyg_edge_length(z.geometry, z.u[i], z.u[j], z.epsilon[i], z.epsilon[j], z.zeta[(i, j)])
        for i, j in surface.edges
    }


def _substituted_radius(geometry: Geometry, alpha: int, ef: float, v: int) -> float:
    """``r`` with ``e^f = r, sinh r, tanh r`` (hyperbolic) or ``r, sin r, tan r`` (sphere)."""
    if alpha == 0:
        return ef
    if geometry is Geometry.HYPERBOLIC:
        if alpha == 1:
            return math.asinh(ef)
        if not ef < 1:
            raise DomainViolation(f"vertex {v}: alpha = -1 needs e^f = tanh r < 1, got {ef!r}")
        return math.atanh(ef)
    if alpha == 1:
        if not ef < 1:
            raise DomainViolation(f"vertex {v}: alpha = 1 needs e^f = sin r < 1, got {ef!r}")
        return math.asin(ef)
    return math.atan(ef)


def convert_to_zgzlyg(data: ConformalData) -> ZGZLYGData:
    """Rewrite an A / b1 / c1 structure with normalized ``alpha`` as ``(u, epsilon, zeta)``.

    ``epsilon = alpha``; ``u = f`` at ``alpha = 0`` vertices and
    ``e^u = tanh(r/2)`` (hyperbolic) or ``tan(r/2)`` (sphere) elsewhere,
    with ``r`` from the substitution table in the module docstring.
    """
    fams = data.families()
    if len(fams) != 1 or next(iter(fams)) not in (Family.A, Family.B1, Family.C1):
        raise WrongFamily(f"conversion needs a single A, b1 or c1 tag, got {sorted(t.value for t in fams)}")
    n = data.f.shape[0]
    alpha = np.zeros(n) if data.alpha is None else data.alpha
    if not np.all(np.isin(alpha, (-1.0, 0.0, 1.0))):
        raise DomainViolation("alpha must be normalized to {-1, 0, 1} first")
    eps = alpha.astype(int)
    geom = data.geometry
    if geom is Geometry.EUCLIDEAN:
        return ZGZLYGData(geom, data.f.copy(), eps, dict(data.eta))
    half = math.tanh if geom is Geometry.HYPERBOLIC else math.tan
    u = np.empty(n)
    for v in range(n):
        if eps[v] == 0:
            u[v] = data.f[v]
        else:
            r = _substituted_radius(geom, int(eps[v]), math.exp(data.f[v]), v)
            u[v] = math.log(half(r / 2))
    zeta = {(i, j): val / 2.0 ** (int(eps[i] == 0) + int(eps[j] == 0)) for (i, j), val in data.eta.items()}
    return ZGZLYGData(geom, u, eps, zeta)


# ---------------------------------------------------------------------------
# c3 and the generalized hyperbolic cosine laws

GUO_LUO_TYPES = {
    (0, 0): "(0,0,1)",
    (1, 1): "(1,1,1)",
    (-1, -1): "(-1,-1,1)",
    (0, 1): "(1,1,0)",
    (0, -1): "(1,-1,0)",
    (1, -1): "(1,1,-1)",
}
# strict lower bound on eta, where one is required
_ETA_BOUND = {(1, 1): 1.0, (-1, -1): 1.0, (0, 1): 0.0, (0, -1): 0.0, (1, -1): 0.0}


def _reduced_cos(pattern, eta, ri, rj):
    a, b = pattern
    if pattern == (0, 0):
        return -1.0 + eta * ri * rj
    if pattern == (1, 1):
        return -math.cos(ri) * math.cos(rj) + eta * math.sin(ri) * math.sin(rj)
    if pattern == (-1, -1):
        return -math.cosh(ri) * math.cosh(rj) + eta * math.sinh(ri) * math.sinh(rj)
    if pattern == (0, 1):
        return -math.cos(rj) + eta * ri * math.sin(rj)
    if pattern == (0, -1):
        return -math.cosh(rj) + eta * ri * math.sinh(rj)
    return -math.cos(ri) * math.cosh(rj) + eta * math.sin(ri) * math.sinh(rj)


@dataclass(frozen=True)
class GuoLuoReduction:
    type_label: str
    pattern: tuple[int, int]
    swapped: bool
    cos_structure: float
    cos_reduced: float
    residual: float


def reduce_c3_guo_luo(alpha_i, alpha_j, eta, r_i, r_j) -> GuoLuoReduction:
    """Compare a c3 edge with its generalized hyperbolic cosine law.

    The c3 factors are substituted as ``e^f = r`` (alpha 0), ``sin r``
    (alpha 1, ``r`` in ``(0, pi/2)``) or ``sinh r`` (alpha -1). Sign pairs
    listed in reverse order (e.g. ``(1, 0)``) are handled by swapping the
    endpoints; ``swapped`` records that.
    """
    try:
        a, b = int(alpha_i), int(alpha_j)
    except (TypeError, ValueError):
        raise UnsupportedSignPattern(f"alpha pair {(alpha_i, alpha_j)!r}") from None
    if (a, b) != (alpha_i, alpha_j) or {a, b} - {-1, 0, 1}:
        raise UnsupportedSignPattern(f"alpha pair {(alpha_i, alpha_j)!r} is not normalized")
    swapped = (a, b) not in GUO_LUO_TYPES
    if swapped:
        a, b, r_i, r_j = b, a, r_j, r_i
    pattern = (a, b)
    bound = _ETA_BOUND.get(pattern)
    if bound is not None and not eta > bound:
        raise DomainViolation(f"type {GUO_LUO_TYPES[pattern]} needs eta > {bound}, got {eta!r}")
    for alpha, r in ((a, r_i), (b, r_j)):
        if not r > 0 or (alpha == 1 and not r < math.pi / 2):
            raise DomainViolation(f"r = {r!r} outside the substitution range for alpha = {alpha}")
    sub = {0: lambda r: r, 1: math.sin, -1: math.sinh}
    fi, fj = math.log(sub[a](r_i)), math.log(sub[b](r_j))
    structure = _length_value(Family.C3, fi, fj, float(a), float(b), eta, 0.0)
    reduced = _reduced_cos(pattern, eta, r_i, r_j)
    return GuoLuoReduction(GUO_LUO_TYPES[pattern], pattern, swapped, structure, reduced, abs(structure - reduced))


def c3_radius(alpha: int, f: float) -> float:
    """Inverse of the c3 substitution: ``r`` with ``e^f = r``, ``sin r`` or ``sinh r``."""
    ef = math.exp(f)
    if alpha == 0:
        return ef
    if alpha == 1:
        if not ef < 1:
            raise DomainViolation(f"alpha = 1 needs e^f < 1, got {ef!r}")
        return math.asin(ef)
    return math.asinh(ef)
