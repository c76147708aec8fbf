"""The seven families of discrete conformal structures.

Each family turns per-vertex factors ``f`` (plus the family's constants
``alpha``, ``eta`` and ``C``) into edge lengths ``l`` and signed partial
edge lengths ``d`` with ``d_ij + d_ji = l_ij``:

====== ========== ==================================================================
family geometry   edge length
====== ========== ==================================================================
A      euclidean  l^2   = a_i e^{2f_i} + a_j e^{2f_j} + 2 eta e^{f_i+f_j}
b1     hyperbolic cosh l = sqrt((1 + a_i e^{2f_i})(1 + a_j e^{2f_j})) + eta e^{f_i+f_j}
b2     hyperbolic cosh l = cosh(f_j - f_i - C_ij) + eta e^{f_i+f_j}
c1     spherical  cos l  = sqrt((1 - a_i e^{2f_i})(1 - a_j e^{2f_j})) - eta e^{f_i+f_j}
c2     spherical  cos l  = cosh(f_j - f_i - C_ij) - eta e^{f_i+f_j}
c3     spherical  cos l  = -sqrt((1 - a_i e^{2f_i})(1 - a_j e^{2f_j})) + eta e^{f_i+f_j}
c4     spherical  cos l  = -cosh(f_j - f_i - C_ij) + eta e^{f_i+f_j}
====== ========== ==================================================================

The partial length is fixed by ``dl_ij/df_i``: it equals ``d_ij`` in the
plane, ``tanh d_ij`` in the hyperbolic plane and ``tan d_ij`` on the sphere.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field, replace
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import (
    BranchFailure,
    CompatibilityViolated,
    DCSError,
    FaceNotEmbeddable,
    InvalidRadicand,
    InvalidStructure,
    NoRealLength,
    PerturbationInvalid,
    TanhOutOfRange,
)
from .geometry import Geometry, is_embeddable
from .surface import Edge, TriangulatedSurface, edge_key, face_edges

REALIZE_TOL = 1e-9
CYCLE_TOL = 1e-12
BRANCH_TOL = 1e-8


class Family(enum.Enum):
    A = "A"
    B1 = "b1"
    B2 = "b2"
    C1 = "c1"
    C2 = "c2"
    C3 = "c3"
    C4 = "c4"

    @property
    def geometry(self) -> Geometry:
        if self is Family.A:
            return Geometry.EUCLIDEAN
        if self in (Family.B1, Family.B2):
            return Geometry.HYPERBOLIC
        return Geometry.SPHERICAL

    @property
    def uses_alpha(self) -> bool:
        return self in (Family.A, Family.B1, Family.C1, Family.C3)

    @property
    def uses_C(self) -> bool:
        return self in (Family.B2, Family.C2, Family.C4)

    @property
    def negative_ratio(self) -> bool:
        """c3 and c4 have ``cos d_ij / cos d_ji < 0``."""
        return self in (Family.C3, Family.C4)

    @property
    def long_name(self) -> str:
        return _LONG_NAMES[self]

    @classmethod
    def parse(cls, value) -> "Family":
        if isinstance(value, cls):
            return value
        s = str(value)
        for fam, long in _LONG_NAMES.items():
            if s == long or s == fam.value or s.lower() == fam.value.lower():
                return fam
        raise ValueError(f"unknown family tag {value!r}")


_LONG_NAMES = {
    Family.A: "EuclideanA",
    Family.B1: "HypB1",
    Family.B2: "HypB2",
    Family.C1: "SphC1",
    Family.C2: "SphC2",
    Family.C3: "SphC3",
    Family.C4: "SphC4",
}

# spherical tags that may share one mesh
SPHERICAL_GROUPS = (frozenset({Family.C1, Family.C3}), frozenset({Family.C2, Family.C4}))


# ---------------------------------------------------------------------------
# single-edge formulas

def _radicand(alpha, f, sign):
    r = 1.0 + sign * alpha * math.exp(2.0 * f)
    if not r > 0.0:
        raise InvalidRadicand(f"1 {'+' if sign > 0 else '-'} alpha e^(2f) = {r!r} <= 0 (alpha={alpha}, f={f})")
    return r


def _length_value(tag: Family, fi, fj, ai, aj, eta, c_ij):
    """``l^2``, ``cosh l`` or ``cos l`` for the edge, as appropriate to the geometry."""
    e = math.exp(fi + fj)
    if tag is Family.A:
        return ai * math.exp(2.0 * fi) + aj * math.exp(2.0 * fj) + 2.0 * eta * e
    if tag is Family.B1:
        return math.sqrt(_radicand(ai, fi, 1) * _radicand(aj, fj, 1)) + eta * e
    if tag is Family.C1:
        return math.sqrt(_radicand(ai, fi, -1) * _radicand(aj, fj, -1)) - eta * e
    if tag is Family.C3:
        return -math.sqrt(_radicand(ai, fi, -1) * _radicand(aj, fj, -1)) + eta * e
    ch = math.cosh(fj - fi - c_ij)
    if tag is Family.B2 or tag is Family.C2:
        return ch + (eta * e if tag is Family.B2 else -eta * e)
    return -ch + eta * e  # C4


def _length_from_value(tag: Family, x: float) -> float:
    if tag is Family.A:
        if not x > 0.0:
            raise NoRealLength(f"l^2 = {x!r} <= 0")
        return math.sqrt(x)
    if tag.geometry is Geometry.HYPERBOLIC:
        if not x > 1.0:
            raise NoRealLength(f"cosh l = {x!r} <= 1")
        return math.acosh(x)
    if not -1.0 < x < 1.0:
        raise NoRealLength(f"cos l = {x!r} outside (-1, 1)")
    return math.acos(x)


def edge_length(tag, f_i, f_j, alpha_i=0.0, alpha_j=0.0, eta=0.0, c_ij=0.0) -> float:
    """Length of the edge ``{ij}`` under the given family.

    Parameters the family does not read are ignored. Spherical lengths are
    the principal ``arccos`` in ``(0, pi)``.
    """
    tag = Family.parse(tag)
    return _length_from_value(tag, _length_value(tag, f_i, f_j, alpha_i, alpha_j, eta, c_ij))


def _dl_numerator(tag: Family, fi, fj, ai, aj, eta, c_ij):
    """``dl_ij/df_i`` times ``l`` (plane), ``sinh l`` or ``sin l``."""
    e = math.exp(fi + fj)
    if tag is Family.A:
        return ai * math.exp(2.0 * fi) + eta * e
    if tag in (Family.B1, Family.C1, Family.C3):
        sign = 1 if tag is Family.B1 else -1
        ri, rj = _radicand(ai, fi, sign), _radicand(aj, fj, sign)
        n = ai * math.exp(2.0 * fi) * math.sqrt(rj / ri) + eta * e
        return -n if tag is Family.C3 else n
    s = math.sinh(fj - fi - c_ij)
    if tag is Family.B2:
        return -s + eta * e
    if tag is Family.C2:
        return s + eta * e
    return -s - eta * e  # C4


def partial_lengths(tag, f_i, f_j, alpha_i=0.0, alpha_j=0.0, eta=0.0, c_ij=0.0) -> tuple[float, float]:
    """Signed partial lengths ``(d_ij, d_ji)`` of the edge ``{ij}``.

    On the sphere both principal arctangents are taken first; when their sum
    falls short of ``l`` by ``pi``, ``pi`` is added to the smaller of the
    two (to ``d_ij`` on a tie), which keeps ``|d|`` as small as possible.

    Raises
    ------
    TanhOutOfRange
        A hyperbolic ``tanh d`` has modulus >= 1.
    BranchFailure
        No choice of branches gives ``d_ij + d_ji = l``.
    """
    tag = Family.parse(tag)
    args_ij = (f_i, f_j, alpha_i, alpha_j, eta, c_ij)
    args_ji = (f_j, f_i, alpha_j, alpha_i, eta, -c_ij)
    l = edge_length(tag, *args_ij)
    n_ij = _dl_numerator(tag, *args_ij)
    n_ji = _dl_numerator(tag, *args_ji)
    geom = tag.geometry
    if geom is Geometry.EUCLIDEAN:
        return n_ij / l, n_ji / l
    if geom is Geometry.HYPERBOLIC:
        s = math.sinh(l)
        t_ij, t_ji = n_ij / s, n_ji / s
        if not (abs(t_ij) < 1.0 and abs(t_ji) < 1.0):
            raise TanhOutOfRange(f"tanh d = ({t_ij!r}, {t_ji!r}) outside (-1, 1)")
        return math.atanh(t_ij), math.atanh(t_ji)
    s = math.sin(l)
    d_ij, d_ji = math.atan(n_ij / s), math.atan(n_ji / s)
    gap = l - (d_ij + d_ji)
    if abs(gap) <= BRANCH_TOL:
        return d_ij, d_ji
    if abs(gap - math.pi) <= BRANCH_TOL:
        if d_ij <= d_ji:
            return d_ij + math.pi, d_ji
        return d_ij, d_ji + math.pi
    raise BranchFailure(f"principal partial lengths sum to {d_ij + d_ji!r}, edge length {l!r}")


def length_derivative_transform(geometry: Geometry) -> Callable[[float], float]:
    """``T`` with ``dl_ij/df_i = T(d_ij)``: identity, tanh or tan."""
    return {Geometry.EUCLIDEAN: lambda x: x, Geometry.HYPERBOLIC: math.tanh, Geometry.SPHERICAL: math.tan}[
        Geometry.parse(geometry)
    ]


# ---------------------------------------------------------------------------
# structures on a mesh

class UnusedFieldWarning(UserWarning):
    """A field the active family never reads was supplied and is ignored."""


@dataclass(frozen=True)
class Violation:
    kind: str
    where: tuple
    detail: str = ""

    def to_json(self) -> dict:
        return {"kind": self.kind, "where": list(self.where), "detail": self.detail}


@dataclass
class ConformalData:
    """Conformal factors and family constants on a triangulated surface.

    ``eta`` is keyed by unordered edges ``(min, max)``; ``C`` by oriented
    edges and must be antisymmetric. ``family`` is either one tag for the
    whole mesh or a per-edge mapping (only meaningful on the sphere, where
    c1/c3 or c2/c4 may be mixed). Missing ``alpha`` or ``C`` mean zero.
    """

    geometry: Geometry
    f: np.ndarray
    eta: dict
    family: Family | dict
    alpha: np.ndarray | None = None
    C: dict | None = None

    def __post_init__(self):
        self.geometry = Geometry.parse(self.geometry)
        self.f = np.asarray(self.f, dtype=float)
        if self.alpha is not None:
            self.alpha = np.asarray(self.alpha, dtype=float)
        if isinstance(self.family, Mapping):
            self.family = {edge_key(*e): Family.parse(t) for e, t in self.family.items()}
        else:
            self.family = Family.parse(self.family)
        self.eta = {edge_key(*e): float(v) for e, v in self.eta.items()}
        if self.C is not None:
            self.C = {tuple(e): float(v) for e, v in self.C.items()}

    def family_of(self, i: int, j: int) -> Family:
        if isinstance(self.family, Family):
            return self.family
        return self.family[edge_key(i, j)]

    def families(self) -> set[Family]:
        if isinstance(self.family, Family):
            return {self.family}
        return set(self.family.values())

    def alpha_at(self, v: int) -> float:
        return 0.0 if self.alpha is None else float(self.alpha[v])

    def c_at(self, i: int, j: int) -> float:
        if self.C is None:
            return 0.0
        if (i, j) in self.C:
            return self.C[(i, j)]
        if (j, i) in self.C:
            return -self.C[(j, i)]
        return 0.0

    def edge_args(self, i: int, j: int, f=None):
        """Arguments of :func:`edge_length` for the oriented edge ``(i, j)``."""
        f = self.f if f is None else f
        return (
            self.family_of(i, j),
            float(f[i]),
            float(f[j]),
            self.alpha_at(i),
            self.alpha_at(j),
            self.eta[edge_key(i, j)],
            self.c_at(i, j),
        )

    def with_f(self, f) -> "ConformalData":
        return replace(self, f=np.array(f, dtype=float))

    def copy(self) -> "ConformalData":
        return replace(
            self,
            f=self.f.copy(),
            alpha=None if self.alpha is None else self.alpha.copy(),
            eta=dict(self.eta),
            C=None if self.C is None else dict(self.C),
            family=self.family if isinstance(self.family, Family) else dict(self.family),
        )


@dataclass
class PartialMetric:
    geometry: Geometry
    l: dict
    d: dict = field(repr=False)

    def face_lengths(self, face) -> tuple[float, float, float]:
        """``(l_ij, l_jk, l_ki)`` in the face's stored order."""
        return tuple(self.l[edge_key(a, b)] for a, b in face_edges(face))  # type: ignore[return-value]

    def face_partials(self, face) -> tuple[float, ...]:
        """``(d_ij, d_jk, d_ki, d_ji, d_kj, d_ik)``."""
        fwd = [self.d[e] for e in face_edges(face)]
        bwd = [self.d[(b, a)] for a, b in face_edges(face)]
        return tuple(fwd + bwd)

    def max_partial_gap(self) -> float:
        return max(abs(self.d[(i, j)] + self.d[(j, i)] - l) for (i, j), l in self.l.items())


def check_compatibility(geometry, d) -> float:
    """Residual of the face compatibility condition.

    ``d`` is ``(d_ij, d_jk, d_ki, d_ji, d_kj, d_ik)``. Returns
    ``|sum d_fwd^2 - sum d_bwd^2|`` in the plane and the absolute difference
    of the ``cosh`` / ``cos`` products otherwise.
    """
    geometry = Geometry.parse(geometry)
    fwd, bwd = d[:3], d[3:]
    if geometry is Geometry.EUCLIDEAN:
        return abs(sum(x * x for x in fwd) - sum(x * x for x in bwd))
    fn = math.cosh if geometry is Geometry.HYPERBOLIC else math.cos
    return abs(math.prod(fn(x) for x in fwd) - math.prod(fn(x) for x in bwd))


def complete_C(surface: TriangulatedSurface, partial: Mapping | None) -> dict:
    """Fill in missing orientations by antisymmetry; absent edges get 0."""
    partial = {} if partial is None else {tuple(k): float(v) for k, v in partial.items()}
    out = {}
    for i, j in surface.edges:
        if (i, j) in partial:
            out[(i, j)] = partial[(i, j)]
            out[(j, i)] = partial.get((j, i), -partial[(i, j)])
        elif (j, i) in partial:
            out[(j, i)] = partial[(j, i)]
            out[(i, j)] = -partial[(j, i)]
        else:
            out[(i, j)] = out[(j, i)] = 0.0
    return out


def validate_C(surface: TriangulatedSurface, C: Mapping, tol: float = CYCLE_TOL) -> list[Violation]:
    """Antisymmetry on every edge and zero face sums on every face."""
    out = []
    for i, j in surface.edges:
        if (i, j) not in C or (j, i) not in C:
            out.append(Violation("missing-C", (i, j), "C must be given on both orientations"))
            continue
        s = C[(i, j)] + C[(j, i)]
        if abs(s) > tol:
            out.append(Violation("antisymmetry", (i, j), f"C_ij + C_ji = {s!r}"))
    if out:
        return out
    for face in surface.faces:
        s = sum(C[e] for e in face_edges(face))
        if abs(s) > tol:
            out.append(Violation("cocycle", tuple(face), f"C_ij + C_jk + C_ki = {s!r}"))
    return out


def validate_spherical_mix(surface: TriangulatedSurface, data: ConformalData) -> list[Violation]:
    """Group mixing and the negative-ratio parity rule on every face."""
    tags = {e: data.family_of(*e) for e in surface.edges}
    present = set(tags.values())
    out = []
    if not any(present <= g for g in SPHERICAL_GROUPS):
        out.append(Violation("group-mix", (), f"tags {sorted(t.value for t in present)} mix c1/c3 with c2/c4"))
    for face in surface.faces:
        neg = [edge_key(a, b) for a, b in face_edges(face) if tags[edge_key(a, b)].negative_ratio]
        if len(neg) % 2:
            out.append(Violation("parity", tuple(face), f"{len(neg)} negative-ratio edge(s) {neg}"))
    return out


def validate_structure(surface: TriangulatedSurface, data: ConformalData) -> list[Violation]:
    """Every invariant of ``data`` on ``surface``; unused fields only warn."""
    out = []
    if data.f.shape != (surface.n_vertices,):
        out.append(Violation("shape", (), f"f has shape {data.f.shape}, expected ({surface.n_vertices},)"))
    if data.alpha is not None and data.alpha.shape != (surface.n_vertices,):
        out.append(Violation("shape", (), f"alpha has shape {data.alpha.shape}"))
    for e in surface.edges:
        if e not in data.eta:
            out.append(Violation("missing-eta", e))
    if isinstance(data.family, dict):
        for e in surface.edges:
            if e not in data.family:
                out.append(Violation("missing-family", e))
    if out:
        return out
    fams = data.families()
    for fam in sorted(fams, key=lambda t: t.value):
        if fam.geometry is not data.geometry:
            out.append(Violation("tag-geometry", (), f"{fam.long_name} is not a {data.geometry.value} family"))
    if data.geometry is not Geometry.SPHERICAL and len(fams) > 1:
        out.append(Violation("group-mix", (), "only spherical structures may mix families"))
    if any(t.uses_C for t in fams):
        C = data.C if data.C is not None else complete_C(surface, None)
        out.extend(validate_C(surface, C))
    if data.geometry is Geometry.SPHERICAL and not out:
        out.extend(validate_spherical_mix(surface, data))
    if data.alpha is not None and not any(t.uses_alpha for t in fams) and np.any(data.alpha != 0):
        warnings.warn("alpha is ignored by families " + ",".join(sorted(t.value for t in fams)), UnusedFieldWarning)
    if data.C is not None and not any(t.uses_C for t in fams) and any(v != 0 for v in data.C.values()):
        warnings.warn("C is ignored by families " + ",".join(sorted(t.value for t in fams)), UnusedFieldWarning)
    return out


def _edge_values(surface, data, f=None):
    l, d = {}, {}
    for i, j in surface.edges:
        args = data.edge_args(i, j, f)
        try:
            l[(i, j)] = edge_length(*args)
            d[(i, j)], d[(j, i)] = partial_lengths(*args)
        except DCSError as exc:
            raise type(exc)(f"edge {(i, j)}: {exc}") from exc
    return l, d


def face_residuals(surface: TriangulatedSurface, metric: PartialMetric) -> list[float]:
    return [check_compatibility(metric.geometry, metric.face_partials(face)) for face in surface.faces]


def realize(surface: TriangulatedSurface, data: ConformalData, tol: float = REALIZE_TOL) -> PartialMetric:
    """Edge lengths and partial lengths of ``data`` on ``surface``.

    Raises
    ------
    InvalidStructure
        ``data`` breaks an invariant other than the spherical parity rule.
    CompatibilityViolated
        Parity rule broken, or some face residual exceeds ``tol``.
    FaceNotEmbeddable
        Some face fails the triangle inequalities of the geometry.
    """
    violations = validate_structure(surface, data)
    parity = [v for v in violations if v.kind == "parity"]
    others = [v for v in violations if v.kind != "parity"]
    if others:
        raise InvalidStructure("; ".join(f"{v.kind} at {v.where}: {v.detail}" for v in others))
    if parity:
        faces = [v.where for v in parity]
        try:
            metric = PartialMetric(data.geometry, *_edge_values(surface, data))
            res = max(check_compatibility(data.geometry, metric.face_partials(fc)) for fc in faces)
        except DCSError:
            res = float("nan")
        raise CompatibilityViolated(faces, res, reason="parity")

    metric = PartialMetric(data.geometry, *_edge_values(surface, data))
    bad = [face for face in surface.faces if not is_embeddable(data.geometry, metric.face_lengths(face))]
    if bad:
        raise FaceNotEmbeddable(bad)
    res = face_residuals(surface, metric)
    failing = [face for face, r in zip(surface.faces, res) if not r < tol]
    if failing:
        raise CompatibilityViolated(failing, max(res))
    return metric


def check_conformality(data: ConformalData, edge: Edge, k: int, h: float = 1e-6) -> tuple[float, float, float]:
    """Central-difference residuals of the defining derivative relations.

    Returns ``(|dl/df_i - T(d_ij)|, |dl/df_j - T(d_ji)|, |dd_ij/df_k|)``
    where ``T`` is identity, ``tanh`` or ``tan`` per geometry and ``k`` is
    a vertex other than ``i`` and ``j`` (usually the third vertex of a face
    containing the edge).
    """
    i, j = edge
    if k in (i, j):
        raise ValueError("k must differ from both edge endpoints")
    T = length_derivative_transform(data.geometry)

    def lengths(f):
        try:
            args = data.edge_args(i, j, f)
            return edge_length(*args), partial_lengths(*args)
        except DCSError as exc:
            raise PerturbationInvalid(f"edge {edge} invalid near f: {exc}") from exc

    f0 = data.f.astype(float)
    _, (d_ij, d_ji) = lengths(f0)

    def shifted(v, s):
        f = f0.copy()
        f[v] += s
        return lengths(f)

    dl_i = (shifted(i, h)[0] - shifted(i, -h)[0]) / (2 * h)
    dl_j = (shifted(j, h)[0] - shifted(j, -h)[0]) / (2 * h)
    dd_k = (shifted(k, h)[1][0] - shifted(k, -h)[1][0]) / (2 * h)
    return abs(dl_i - T(d_ij)), abs(dl_j - T(d_ji)), abs(dd_k)


def conformality_residuals(surface: TriangulatedSurface, data: ConformalData, h: float = 1e-6) -> list[tuple]:
    """:func:`check_conformality` for every edge, against each opposite vertex."""
    out = []
    for e in surface.edges:
        for fid in surface.edge_faces[e]:
            k = surface.opposite_vertex(fid, e)
            out.append((e, k, check_conformality(data, e, k, h)))
    return out


def coboundary(surface: TriangulatedSurface, g: Sequence[float]) -> dict:
    """``C_ij = g_i - g_j`` on every oriented edge."""
    return {(i, j): float(g[i]) - float(g[j]) for i, j in surface.oriented_edges}
