"""Black-box recognition of hyperbolic and spherical conformal structures.

A *provider* is any callable ``(f_i, f_j) -> (d_ij, d_ji)`` describing one
edge while the other factors are held fixed. From it we sample

    H = log(cosh^2 d_ij / cosh^2 d_ji)      (hyperbolic)
    H = log(cos^2 d_ij / cos^2 d_ji)        (spherical)

and its derivatives by central differences. For a genuine structure,
``H_ij = 0`` (mixed derivative), ``(e^H d_i + d_j) H = 2 (e^H - 1)`` and
``d_i cosh l = cosh l - cosh d_ji / cosh d_ij`` (``cos`` on the sphere).
Either ``d_i H = 2`` identically (families b2, c2, c4) or

    d_i H =  2 a e^{2f_i} / (1 + a e^{2f_i})    (hyperbolic)
    d_i H = -2 a e^{2f_i} / (1 - a e^{2f_i})    (spherical)

with a constant ``a = alpha_i`` (families b1, c1, c3). :func:`classify_edge`
decides which, and recovers the constants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DCSError, InconsistentConstant, NotClassifiable, ProviderFailure, WrongGeometry
from .geometry import Geometry
from .structures import ConformalData, Family, _length_value, edge_length, partial_lengths

Provider = Callable[[float, float], tuple[float, float]]

CASE_TOL = 1e-6
PARAM_TOL = 1e-6
FIT_TOL = 1e-6


@dataclass(frozen=True)
class HSample:
    f_i: float
    f_j: float
    H: float
    dH_dfi: float
    dH_dfj: float
    d2H_dfidfj: float
    # cos d_ij * cos d_ji sign on the sphere, always +1 in the hyperbolic plane
    ratio_sign: float
    d_ij: float
    d_ji: float
    # |d_i X - (X - c(d_ji)/c(d_ij))| + the j analogue, X = cosh l or cos l
    link_residual: float


def _log_c(geometry, d):
    if geometry is Geometry.HYPERBOLIC:
        return math.log(math.cosh(d))
    return math.log(abs(math.cos(d)))


def _call(provider, fi, fj):
    try:
        d_ij, d_ji = provider(fi, fj)
    except DCSError as exc:
        raise ProviderFailure(f"provider failed at ({fi}, {fj}): {exc}") from exc
    if not (math.isfinite(d_ij) and math.isfinite(d_ji)):
        raise ProviderFailure(f"provider returned non-finite values at ({fi}, {fj})")
    return d_ij, d_ji


def sample_H(provider: Provider, geometry, grid: Sequence[tuple[float, float]], h: float = 1e-4) -> list[HSample]:
    """H and its first and mixed derivatives at each grid point (9-point stencil)."""
    geometry = Geometry.parse(geometry)
    if geometry is Geometry.EUCLIDEAN:
        raise WrongGeometry("the H-function is defined for hyperbolic and spherical structures only")
    c = math.cosh if geometry is Geometry.HYPERBOLIC else math.cos

    def H_at(fi, fj):
        d_ij, d_ji = _call(provider, fi, fj)
        return 2.0 * (_log_c(geometry, d_ij) - _log_c(geometry, d_ji)), d_ij, d_ji

    def X_at(fi, fj):
        d_ij, d_ji = _call(provider, fi, fj)
        return c(d_ij + d_ji)

    out = []
    for fi, fj in grid:
        fi, fj = float(fi), float(fj)
        H0, d_ij, d_ji = H_at(fi, fj)
        Hp_i, Hm_i = H_at(fi + h, fj)[0], H_at(fi - h, fj)[0]
        Hp_j, Hm_j = H_at(fi, fj + h)[0], H_at(fi, fj - h)[0]
        Hpp, Hpm = H_at(fi + h, fj + h)[0], H_at(fi + h, fj - h)[0]
        Hmp, Hmm = H_at(fi - h, fj + h)[0], H_at(fi - h, fj - h)[0]
        X0 = c(d_ij + d_ji)
        dX_i = (X_at(fi + h, fj) - X_at(fi - h, fj)) / (2 * h)
        dX_j = (X_at(fi, fj + h) - X_at(fi, fj - h)) / (2 * h)
        link = abs(dX_i - (X0 - c(d_ji) / c(d_ij))) + abs(dX_j - (X0 - c(d_ij) / c(d_ji)))
        sign = 1.0 if geometry is Geometry.HYPERBOLIC else math.copysign(1.0, math.cos(d_ij) * math.cos(d_ji))
        out.append(
            HSample(
                f_i=fi,
                f_j=fj,
                H=H0,
                dH_dfi=(Hp_i - Hm_i) / (2 * h),
                dH_dfj=(Hp_j - Hm_j) / (2 * h),
                d2H_dfidfj=(Hpp - Hpm - Hmp + Hmm) / (4 * h * h),
                ratio_sign=sign,
                d_ij=d_ij,
                d_ji=d_ji,
                link_residual=link,
            )
        )
    return out


@dataclass(frozen=True)
class HPDEResiduals:
    mixed: float
    transport: float
    link: float

    @property
    def max(self) -> float:
        return max(self.mixed, self.transport, self.link)


def verify_H_pde(samples: Sequence[HSample]) -> HPDEResiduals:
    """Largest violation of the mixed-derivative, transport and length-link identities.

    The transport identity alone cannot see structures with ``H = 0``
    everywhere (e.g. ``d_ij = d_ji = l/2``); the length-link term catches
    those.
    """
    mixed = max(abs(s.d2H_dfidfj) for s in samples)
    transport = max(abs(math.exp(s.H) * s.dH_dfi + s.dH_dfj - 2.0 * (math.exp(s.H) - 1.0)) for s in samples)
    link = max(s.link_residual for s in samples)
    return HPDEResiduals(mixed, transport, link)


# ---------------------------------------------------------------------------
# classification

@dataclass(frozen=True)
class ClassificationResult:
    family: Family
    eta: float
    fit_residual: float
    alpha_i: float | None = None
    alpha_j: float | None = None
    C_ij: float | None = None

    @property
    def case(self) -> str:
        return "II" if self.family.uses_C else "I"

    def to_json(self) -> dict:
        return {
            "family": self.family.value,
            "case": self.case,
            "alpha_i": self.alpha_i,
            "alpha_j": self.alpha_j,
            "C_ij": self.C_ij,
            "eta": self.eta,
            "fit_residual": self.fit_residual,
        }


def probe_grid(box, n: int = 5) -> list[tuple[float, float]]:
    """``n x n`` tensor grid spanning ``box = ((fi_lo, fi_hi), (fj_lo, fj_hi))``."""
    (a0, a1), (b0, b1) = box
    return [(x, y) for x in np.linspace(a0, a1, n) for y in np.linspace(b0, b1, n)]


def _is_case_two(samples, tol=CASE_TOL) -> bool:
    return all(abs(s.dH_dfi - 2.0) < tol and abs(s.dH_dfj + 2.0) < tol for s in samples)


def _case_one_constants(samples, geometry):
    """Per-probe ``(a_ij, a_ji)`` from the rational solutions, or None if undefined."""
    sph = geometry is Geometry.SPHERICAL
    out = []
    for s in samples:
        p, q = s.dH_dfi, s.dH_dfj
        if abs(2.0 - p) < CASE_TOL or abs(2.0 + q) < CASE_TOL:
            return None
        a_ij = p * math.exp(-2 * s.f_i) / (2.0 - p)
        a_ji = -q * math.exp(-2 * s.f_j) / (2.0 + q)
        if sph:
            a_ij, a_ji = -a_ij, -a_ji
        out.append((a_ij, a_ji))
    return np.array(out)


def _spread(values) -> float:
    values = np.asarray(values)
    return float(np.max(np.abs(values - values.mean())) / max(1.0, float(np.max(np.abs(values)))))


def case_tests(samples: Sequence[HSample], geometry, tol: float = CASE_TOL) -> tuple[bool, bool]:
    """``(case I accepts, case II accepts)`` on a set of probes."""
    geometry = Geometry.parse(geometry)
    two = _is_case_two(samples, tol)
    consts = _case_one_constants(samples, geometry)
    one = False
    if consts is not None and np.all(np.isfinite(consts)):
        if _spread(consts[:, 0]) < PARAM_TOL and _spread(consts[:, 1]) < PARAM_TOL:
            a_i, a_j = consts.mean(axis=0)
            one = _case_one_H_fit(samples, geometry, a_i, a_j) < PARAM_TOL
    return one, two


def _case_one_H_fit(samples, geometry, a_i, a_j) -> float:
    sgn = 1.0 if geometry is Geometry.HYPERBOLIC else -1.0
    worst = 0.0
    for s in samples:
        num = 1.0 + sgn * a_i * math.exp(2 * s.f_i)
        den = 1.0 + sgn * a_j * math.exp(2 * s.f_j)
        if not (num > 0 and den > 0):
            return math.inf
        worst = max(worst, abs(math.log(num / den) - s.H))
    return worst


def _branch_gap(geometry, delta):
    # spherical partial lengths are only fixed up to which endpoint carries the extra pi
    if geometry is Geometry.SPHERICAL:
        delta -= math.pi * round(delta / math.pi)
    return abs(delta)


def _pick_family(geometry, case_two, sign):
    if geometry is Geometry.HYPERBOLIC:
        return Family.B2 if case_two else Family.B1
    if sign > 0:
        return Family.C2 if case_two else Family.C1
    return Family.C4 if case_two else Family.C3


def classify_edge(provider: Provider, geometry, box, h: float = 1e-4) -> ClassificationResult:
    """Recover the family and constants of an unknown single-edge provider.

    ``box`` must lie inside the structure's validity domain; it is probed on
    a 5 x 5 grid.

    Raises
    ------
    WrongGeometry
        Euclidean providers are not handled.
    InconsistentConstant
        The case-I constants drift across the probes.
    NotClassifiable
        Neither case reproduces the provider within tolerance.
    """
    geometry = Geometry.parse(geometry)
    if geometry is Geometry.EUCLIDEAN:
        raise WrongGeometry("classification covers hyperbolic and spherical structures only")
    samples = sample_H(provider, geometry, probe_grid(box), h)
    signs = {s.ratio_sign for s in samples}
    if len(signs) != 1:
        raise NotClassifiable("sign of cos d_ij / cos d_ji changes inside the box")
    sign = signs.pop()

    case_two = _is_case_two(samples)
    alpha_i = alpha_j = c_ij = None
    if case_two:
        cs = [(s.H - 2 * s.f_i + 2 * s.f_j) / 2 for s in samples]
        if _spread(cs) >= PARAM_TOL:
            raise InconsistentConstant(f"C_ij estimates spread {_spread(cs):.3e}")
        c_ij = float(np.mean(cs))
    else:
        consts = _case_one_constants(samples, geometry)
        if consts is None or not np.all(np.isfinite(consts)):
            raise NotClassifiable("rational case-I solution undefined at some probe")
        for col, name in ((0, "a_ij"), (1, "a_ji")):
            if _spread(consts[:, col]) >= PARAM_TOL:
                raise InconsistentConstant(f"{name} estimates spread {_spread(consts[:, col]):.3e}")
        alpha_i, alpha_j = (float(x) for x in consts.mean(axis=0))
    family = _pick_family(geometry, case_two, sign)

    # eta from the best-conditioned probe
    best = max(samples, key=lambda s: s.f_i + s.f_j)
    ai, aj, c = alpha_i or 0.0, alpha_j or 0.0, c_ij or 0.0
    x_obs = math.cosh(best.d_ij + best.d_ji) if geometry is Geometry.HYPERBOLIC else math.cos(best.d_ij + best.d_ji)
    try:
        base = _length_value(family, best.f_i, best.f_j, ai, aj, 0.0, c)
    except DCSError as exc:
        raise NotClassifiable(f"recovered constants invalid: {exc}") from exc
    eta_sign = -1.0 if family in (Family.C1, Family.C2) else 1.0
    eta = (x_obs - base) / (eta_sign * math.exp(best.f_i + best.f_j))

    fit = 0.0
    for s in samples:
        try:
            l_pred = edge_length(family, s.f_i, s.f_j, ai, aj, eta, c)
            d_pred = partial_lengths(family, s.f_i, s.f_j, ai, aj, eta, c)
        except DCSError as exc:
            raise NotClassifiable(f"recovered structure invalid at a probe: {exc}") from exc
        fit = max(
            fit,
            abs(l_pred - (s.d_ij + s.d_ji)),
            _branch_gap(geometry, d_pred[0] - s.d_ij),
            _branch_gap(geometry, d_pred[1] - s.d_ji),
        )
    if not fit < FIT_TOL:
        raise NotClassifiable(f"best fit ({family.value}) leaves residual {fit:.3e}")
    return ClassificationResult(family, eta, fit, alpha_i, alpha_j, c_ij)


def edge_provider(data: ConformalData, i: int, j: int) -> Provider:
    """Provider for edge ``(i, j)`` of ``data`` with all other factors frozen."""
    tag, _, _, ai, aj, eta, c = data.edge_args(i, j)

    def provider(fi, fj):
        return partial_lengths(tag, fi, fj, ai, aj, eta, c)

    return provider


def family_provider(tag, alpha_i=0.0, alpha_j=0.0, eta=0.0, c_ij=0.0) -> Provider:
    tag = Family.parse(tag)
    return lambda fi, fj: partial_lengths(tag, fi, fj, alpha_i, alpha_j, eta, c_ij)


def midpoint_provider(tag, alpha_i=0.0, alpha_j=0.0, eta=0.0, c_ij=0.0) -> Provider:
    """Not a conformal structure: the family's lengths split evenly."""
    tag = Family.parse(tag)

    def provider(fi, fj):
        l = edge_length(tag, fi, fj, alpha_i, alpha_j, eta, c_ij)
        return l / 2, l / 2

    return provider
