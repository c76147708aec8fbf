import math

import numpy as np
import pytest

from dcs.errors import (
    DomainViolation,
    InconsistentCocycle,
    NotSimplyConnected,
    UnsupportedSignPattern,
    WrongFamily,
)
from dcs.gauge import (
    GUO_LUO_TYPES,
    ZGZLYGData,
    c3_radius,
    convert_to_zgzlyg,
    fix_gauge,
    gauge_potential,
    normalize_alpha,
    reduce_c3_guo_luo,
    zgzlyg_lengths,
)
from dcs.geometry import Geometry
from dcs.sampling import random_structure
from dcs.structures import ConformalData, coboundary, complete_C, edge_length, realize
from dcs.surface import octahedron, tetrahedron, torus7

from conftest import SPHERES

E, H, S = Geometry.EUCLIDEAN, Geometry.HYPERBOLIC, Geometry.SPHERICAL


def _max_change(surface, a, b):
    la, lb = realize(surface, a).l, realize(surface, b).l
    return max(abs(la[e] - lb[e]) for e in surface.edges)


# --- alpha normalization -------------------------------------------------------------

def test_normalize_single_vertex():
    T = tetrahedron()
    data = ConformalData(E, np.zeros(4), {e: 1.0 for e in T.edges}, "A", alpha=np.array([4.0, 0, 0, 0]))
    out = normalize_alpha(data)
    assert out.alpha[0] == 1 and out.f[0] == pytest.approx(math.log(2), abs=1e-15)
    assert out.alpha[0] * math.exp(2 * out.f[0]) == pytest.approx(4.0, rel=1e-15)


def test_normalize_zero_alpha_unchanged():
    T = tetrahedron()
    data = ConformalData(E, np.full(4, 0.1), {e: 0.7 for e in T.edges}, "A", alpha=np.zeros(4))
    out = normalize_alpha(data)
    assert np.array_equal(out.f, data.f) and out.eta == data.eta


def test_normalize_eta_rescaled():
    T = tetrahedron()
    data = ConformalData(E, np.zeros(4), {e: 1.0 for e in T.edges}, "A", alpha=np.array([9.0, 0, 0, 0]))
    out = normalize_alpha(data)
    assert out.eta[(0, 1)] == pytest.approx(1 / 3, rel=1e-15)
    assert _max_change(T, data, out) < 1e-15


def test_normalize_wrong_family():
    T = tetrahedron()
    with pytest.raises(WrongFamily):
        normalize_alpha(ConformalData(H, np.zeros(4), {e: 2.0 for e in T.edges}, "b2"))


@pytest.mark.parametrize("kind", ["A", "b1", "c1"])
def test_normalize_preserves_lengths(kind, rng):
    T = octahedron()
    for _ in range(10):
        data, _ = random_structure(T, kind, rng)
        assert _max_change(T, data, normalize_alpha(data)) < 1e-12


# --- gauge potential ----------------------------------------------------------------------

def test_zero_C_zero_potential():
    T = tetrahedron()
    assert np.array_equal(gauge_potential(T, complete_C(T, None)).g, np.zeros(4))


def test_hand_integrated_potential():
    T = tetrahedron()
    C = coboundary(T, [0.0, -1.0, 0.0, 0.5])
    assert (C[(0, 1)], C[(1, 2)], C[(2, 0)]) == (1.0, -1.0, 0.0)
    g = gauge_potential(T, C, root=0).g
    assert g[:3] == pytest.approx([0.0, -1.0, 0.0], abs=1e-15)
    assert g[2] - g[0] == C[(2, 0)]


@pytest.mark.parametrize("name", sorted(SPHERES))
def test_potential_root_covariance(name, rng):
    M = SPHERES[name]()
    g0 = rng.normal(size=M.n_vertices)
    C = coboundary(M, g0)
    for root in range(M.n_vertices):
        g = gauge_potential(M, C, root).g
        assert g[root] == 0
        assert g - g[0] == pytest.approx(g0 - g0[0], abs=1e-12)


def test_potential_needs_sphere():
    M = torus7()
    with pytest.raises(NotSimplyConnected):
        gauge_potential(M, complete_C(M, None))


def test_potential_inconsistent():
    T = tetrahedron()
    with pytest.raises(InconsistentCocycle):
        gauge_potential(T, complete_C(T, {(0, 1): 0.3}))


# --- fix_gauge ----------------------------------------------------------------------------

def test_fix_gauge_zero_C_is_identity():
    T = tetrahedron()
    data = ConformalData(H, np.zeros(4), {e: 2.0 for e in T.edges}, "b2", C=complete_C(T, None))
    out = fix_gauge(T, data)
    assert np.array_equal(out.f, data.f) and out.eta == data.eta and out.C == data.C


@pytest.mark.parametrize("geometry,tag,eta", [(H, "b2", 2.0), (S, "c2", 0.5)])
def test_fix_gauge_planted(geometry, tag, eta):
    T = tetrahedron()
    scale = 1.0 if geometry is H else 0.1
    C = coboundary(T, scale * np.arange(4.0))
    data = ConformalData(geometry, np.zeros(4), {e: eta for e in T.edges}, tag, C=C)
    out = fix_gauge(T, data)
    assert all(v == 0 for v in out.C.values())
    assert _max_change(T, data, out) < 1e-12


def test_fix_gauge_wrong_family():
    T = tetrahedron()
    with pytest.raises(WrongFamily):
        fix_gauge(T, ConformalData(E, np.zeros(4), {e: 0.5 for e in T.edges}, "A"))


@pytest.mark.parametrize("kind", ["b2", "c2", "c2c4"])
def test_fix_gauge_idempotent(kind, rng):
    M = octahedron()
    for _ in range(10):
        data, _ = random_structure(M, kind, rng)
        once = fix_gauge(M, data)
        twice = fix_gauge(M, once)
        assert np.array_equal(once.f, twice.f) and once.eta == twice.eta and once.C == twice.C
        assert _max_change(M, data, once) < 1e-12


# --- conversion ------------------------------------------------------------------------------

def _zgz_value(geometry, ui, uj, ei, ej, zeta):
    """Reference length value of the (u, epsilon, zeta) form, written out directly."""
    xi, xj = ei * math.exp(2 * ui), ej * math.exp(2 * uj)
    cross = math.exp(ui + uj)
    if geometry is E:
        return 2 * zeta * cross + xi + xj
    if geometry is H:
        return (4 * zeta * cross + (1 + xi) * (1 + xj)) / ((1 - xi) * (1 - xj))
    return (-4 * zeta * cross + (1 - xi) * (1 - xj)) / ((1 + xi) * (1 + xj))


def _matched_zeta(geometry, value, ui, uj, ei, ej):
    """The zeta making the reference form hit ``value``; it enters linearly."""
    z0 = _zgz_value(geometry, ui, uj, ei, ej, 0.0)
    z1 = _zgz_value(geometry, ui, uj, ei, ej, 1.0)
    return (value - z0) / (z1 - z0)


def _structure_value(geometry, length):
    return {E: length**2, H: math.cosh(length), S: math.cos(length)}[geometry]


def _random_edge_point(geometry, ei, ej, rng):
    """f values and u values from random radii through the substitution tables."""
    fs, us = [], []
    for eps in (ei, ej):
        r = rng.uniform(0.2, 1.2)
        if eps == 0:
            ef, u = r, math.log(r)
        elif geometry is H:
            ef = math.sinh(r) if eps == 1 else math.tanh(r)
            u = math.log(math.tanh(r / 2))
        else:
            ef = math.sin(r) if eps == 1 else math.tan(r)
            u = math.log(math.tan(r / 2))
        fs.append(math.log(ef))
        us.append(u)
    return fs, us


PAIRS = [(a, b) for a in (-1, 0, 1) for b in (-1, 0, 1)]


@pytest.mark.parametrize("geometry,tag,eta_range", [(H, "b1", (0.5, 3.0)), (S, "c1", (0.1, 3.0))])
@pytest.mark.parametrize("pair", PAIRS)
def test_zeta_matches_numeric_oracle(geometry, tag, eta_range, pair, rng):
    ei, ej = pair
    ratios = []
    for _ in range(200):
        (fi, fj), (ui, uj) = _random_edge_point(geometry, ei, ej, rng)
        eta = rng.uniform(*eta_range)
        try:
            l = edge_length(tag, fi, fj, ei, ej, eta)
        except Exception:
            continue
        ratios.append(_matched_zeta(geometry, _structure_value(geometry, l), ui, uj, ei, ej) / eta)
    assert len(ratios) > 50
    expected = 2.0 ** -((ei == 0) + (ej == 0))
    assert np.allclose(ratios, expected, rtol=1e-8)


def test_euclidean_conversion_is_identity(rng):
    T = tetrahedron()
    data, _ = random_structure(T, "A", rng)
    z = convert_to_zgzlyg(normalize_alpha(data))
    norm = normalize_alpha(data)
    assert np.array_equal(z.u, norm.f) and z.zeta == norm.eta


@pytest.mark.parametrize("kind", ["A", "b1", "c1"])
def test_conversion_preserves_lengths(kind, rng):
    M = octahedron()
    for _ in range(10):
        data, metric = random_structure(M, kind, rng)
        z = convert_to_zgzlyg(normalize_alpha(data))
        after = zgzlyg_lengths(M, z)
        assert max(abs(metric.l[e] - after[e]) for e in M.edges) < 1e-10


@pytest.mark.parametrize("geometry,tag,eta", [(H, "b1", 2.0), (S, "c1", 0.5)])
def test_conversion_all_zero_alpha(geometry, tag, eta):
    T = tetrahedron()
    data = ConformalData(geometry, np.full(4, -0.3), {e: eta for e in T.edges}, tag, alpha=np.zeros(4))
    z = convert_to_zgzlyg(data)
    assert z.zeta[(0, 1)] == eta / 4
    after = zgzlyg_lengths(T, z)
    before = realize(T, data).l
    assert max(abs(before[e] - after[e]) for e in T.edges) < 1e-12


def test_conversion_domain_and_family():
    T = tetrahedron()
    with pytest.raises(DomainViolation):
        convert_to_zgzlyg(ConformalData(H, np.zeros(4), {e: 2.0 for e in T.edges}, "b1", alpha=np.full(4, 2.0)))
    with pytest.raises(DomainViolation):
        convert_to_zgzlyg(ConformalData(S, np.full(4, 0.1), {e: 0.5 for e in T.edges}, "c1", alpha=np.ones(4)))
    with pytest.raises(WrongFamily):
        convert_to_zgzlyg(ConformalData(H, np.zeros(4), {e: 2.0 for e in T.edges}, "b2"))


def test_zgzlyg_epsilon_checked():
    with pytest.raises(ValueError):
        ZGZLYGData(H, [0.0], [2], {})


# --- c3 reductions -------------------------------------------------------------------------

def _radius(alpha, rng):
    return rng.uniform(0.2, 1.3) if alpha == 1 else rng.uniform(0.2, 1.5)


@pytest.mark.parametrize("pattern", sorted(GUO_LUO_TYPES))
def test_all_six_reductions(pattern, rng):
    a, b = pattern
    for _ in range(100):
        eta = rng.uniform(1.05, 3.0)
        red = reduce_c3_guo_luo(a, b, eta, _radius(a, rng), _radius(b, rng))
        assert red.type_label == GUO_LUO_TYPES[pattern] and not red.swapped
        assert red.residual < 1e-12


def test_zero_pattern_closed_form():
    red = reduce_c3_guo_luo(0, 0, 1.5, 0.8, 0.9)
    assert red.cos_reduced == pytest.approx(-1 + 1.5 * 0.8 * 0.9, abs=1e-15)
    assert red.residual < 1e-15


def test_unit_pattern_against_edge_length(rng):
    for _ in range(20):
        ri, rj = rng.uniform(0.2, 1.3, 2)
        expected = -math.cos(ri) * math.cos(rj) + 2 * math.sin(ri) * math.sin(rj)
        if not -1 < expected < 1:
            continue
        l = edge_length("c3", math.log(math.sin(ri)), math.log(math.sin(rj)), 1, 1, 2.0)
        assert math.cos(l) == pytest.approx(expected, abs=1e-12)
        assert reduce_c3_guo_luo(1, 1, 2.0, ri, rj).residual < 1e-12


def test_swapped_pattern():
    red = reduce_c3_guo_luo(-1, 1, 1.5, 0.7, 0.4)
    fwd = reduce_c3_guo_luo(1, -1, 1.5, 0.4, 0.7)
    assert red.swapped and red.type_label == "(1,1,-1)"
    assert red.cos_structure == fwd.cos_structure


def test_reduction_errors():
    with pytest.raises(UnsupportedSignPattern):
        reduce_c3_guo_luo(0.5, 1, 2.0, 0.5, 0.5)
    with pytest.raises(DomainViolation):
        reduce_c3_guo_luo(1, 1, 0.9, 0.5, 0.5)
    with pytest.raises(DomainViolation):
        reduce_c3_guo_luo(0, 1, 2.0, 0.5, 2.0)


def test_c3_radius_inverts_substitution():
    assert math.sin(c3_radius(1, math.log(0.5))) == pytest.approx(0.5, abs=1e-15)
    assert math.sinh(c3_radius(-1, 0.3)) == pytest.approx(math.exp(0.3), rel=1e-15)
    with pytest.raises(DomainViolation):
        c3_radius(1, 0.1)
