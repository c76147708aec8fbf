"""Random valid structures for testing and demonstrations.

Parameters are drawn around a base point where every face is equilateral
and rejected until :func:`~dcs.structures.realize` succeeds. Spherical c3 and
c4 edges are placed on the edge cut of a random vertex subset, which puts
an even number of them on every face.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DCSError
from .structures import ConformalData, Family, coboundary, partial_lengths, realize
from .surface import TriangulatedSurface

# (f half-width, alpha range, eta range per tag, g half-width for C)
_MESH_RANGES = {
    Family.A: (0.3, (-0.3, 0.3), (0.6, 1.4), 0.0),
    Family.B1: (0.3, (-0.5, 1.0), (1.2, 3.0), 0.0),
    Family.B2: (0.3, None, (1.2, 3.0), 0.3),
    Family.C1: (0.15, (-0.3, 0.3), (0.35, 0.65), 0.0),
    Family.C2: (0.15, None, (0.35, 0.65), 0.1),
}
_NEGATIVE_ETA = (1.35, 1.65)

MIXES = {"c1c3": (Family.C1, Family.C3), "c2c4": (Family.C2, Family.C4)}


def random_cut(surface: TriangulatedSurface, rng) -> set:
    """Edges crossing a random nonempty proper vertex subset."""
    n = surface.n_vertices
    while True:
        side = rng.random(n) < 0.5
        if 0 < side.sum() < n:
            return {(i, j) for i, j in surface.edges if side[i] != side[j]}


def draw_structure(surface: TriangulatedSurface, kind, rng) -> ConformalData:
    """One unchecked draw; ``kind`` is a family or ``"c1c3"`` / ``"c2c4"``."""
    n = surface.n_vertices
    if isinstance(kind, str) and kind in MIXES:
        pos, neg = MIXES[kind]
        cut = random_cut(surface, rng)
        family = {e: (neg if e in cut else pos) for e in surface.edges}
        base = pos
    else:
        base = Family.parse(kind)
        family = base
        cut = set()
    fw, arange, erange, gw = _MESH_RANGES[base]
    f = rng.uniform(-fw, fw, n)
    alpha = rng.uniform(*arange, n) if arange else None
    eta = {e: float(rng.uniform(*(_NEGATIVE_ETA if e in cut else erange))) for e in surface.edges}
    C = coboundary(surface, rng.uniform(-gw, gw, n)) if base.uses_C else None
    return ConformalData(base.geometry, f, eta, family, alpha=alpha, C=C)


def random_structure(surface: TriangulatedSurface, kind, rng, max_tries: int = 1000):
    """Rejection-sample a valid structure; returns ``(data, metric)``."""
    for _ in range(max_tries):
        data = draw_structure(surface, kind, rng)
        try:
            return data, realize(surface, data)
        except DCSError:
            continue
    raise RuntimeError(f"no valid {kind} structure after {max_tries} draws")


# ---------------------------------------------------------------------------
# single edges for the classifier

_EDGE_RANGES = {
    # f centre range, alpha range, eta range, C range
    Family.B1: ((-0.5, 0.3), (-1.0, 1.5), (0.5, 3.0), None),
    Family.B2: ((-0.5, 0.3), None, (0.5, 3.0), (-0.5, 0.5)),
    Family.C1: ((-0.3, 0.1), (-0.5, 0.5), (0.2, 0.8), None),
    Family.C2: ((-0.3, 0.1), None, (0.2, 0.8), (-0.2, 0.2)),
    Family.C3: ((-0.3, 0.1), (-0.5, 0.5), (1.2, 1.8), None),
    Family.C4: ((-0.3, 0.1), None, (1.2, 1.8), (-0.2, 0.2)),
}


@dataclass(frozen=True)
class PlantedEdge:
    family: Family
    alpha_i: float
    alpha_j: float
    eta: float
    c_ij: float
    box: tuple

    def args(self):
        return (self.family, self.alpha_i, self.alpha_j, self.eta, self.c_ij)


def _edge_ok(p: PlantedEdge, margin: float) -> bool:
    (a0, a1), (b0, b1) = p.box
    for fi in np.linspace(a0 - margin, a1 + margin, 7):
        for fj in np.linspace(b0 - margin, b1 + margin, 7):
            try:
                d_ij, d_ji = partial_lengths(p.family, fi, fj, p.alpha_i, p.alpha_j, p.eta, p.c_ij)
            except DCSError:
                return False
            if p.family.geometry.value == "spherical" and min(abs(np.cos(d_ij)), abs(np.cos(d_ji))) < 0.05:
                return False
    return True


def planted_edge(family, rng, radius: float = 0.05, max_tries: int = 10000) -> PlantedEdge:
    """Random single-edge structure whose probe box lies in its validity domain."""
    family = Family.parse(family)
    frange, arange, erange, crange = _EDGE_RANGES[family]
    for _ in range(max_tries):
        fi0, fj0 = rng.uniform(*frange, 2)
        a_i, a_j = rng.uniform(*arange, 2) if arange else (0.0, 0.0)
        p = PlantedEdge(
            family,
            float(a_i),
            float(a_j),
            float(rng.uniform(*erange)),
            float(rng.uniform(*crange)) if crange else 0.0,
            ((fi0 - radius, fi0 + radius), (fj0 - radius, fj0 + radius)),
        )
        if _edge_ok(p, 2 * radius / 4 + 1e-3):
            return p
    raise RuntimeError(f"no valid planted {family.value} edge after {max_tries} tries")
