import json
import math

import numpy as np
import pytest

from dcs import io
from dcs.curvature import gauss_bonnet_residual, total_area, vertex_curvatures
from dcs.errors import InfeasibleTarget, StepDegenerate
from dcs.geometry import Geometry
from dcs.sampling import random_structure
from dcs.solver import SolverConfig, solve_prescribed_curvature
from dcs.structures import ConformalData, PartialMetric, realize
from dcs.surface import octahedron, tetrahedron, torus7

from conftest import SPHERES

E, H, S = Geometry.EUCLIDEAN, Geometry.HYPERBOLIC, Geometry.SPHERICAL
# 2 pi - 3 acos(0.75)
HYP_DEFECT = 4.114982563739339


def _const_metric(surface, geometry, length):
    return PartialMetric(geometry, {e: length for e in surface.edges}, {})


def _uniform(surface, geometry, family, eta, f=0.0, **kw):
    n = surface.n_vertices
    return ConformalData(geometry, np.full(n, f), {e: eta for e in surface.edges}, family, **kw)


# --- curvature --------------------------------------------------------------------------

def test_curvature_examples():
    T, O = tetrahedron(), octahedron()
    assert vertex_curvatures(T, _const_metric(T, E, 1.0)) == pytest.approx([math.pi] * 4, abs=1e-14)
    assert vertex_curvatures(O, _const_metric(O, E, 1.0)) == pytest.approx([2 * math.pi / 3] * 6, abs=1e-14)
    K = vertex_curvatures(T, _const_metric(T, H, math.acosh(3)))
    assert K == pytest.approx([HYP_DEFECT] * 4, abs=1e-13)


def test_gauss_bonnet_examples():
    T, O = tetrahedron(), octahedron()
    assert gauss_bonnet_residual(T, E, _const_metric(T, E, 1.3)) < 1e-10
    hyp = _const_metric(T, H, math.acosh(3))
    # sum K - area = 4 pi for a hyperbolic sphere
    assert gauss_bonnet_residual(T, H, hyp) < 1e-10
    assert math.fsum(vertex_curvatures(T, hyp)) - total_area(T, hyp) == pytest.approx(4 * math.pi, abs=1e-10)
    octant = _const_metric(O, S, math.pi / 2)
    assert vertex_curvatures(O, octant) == pytest.approx([0.0] * 6, abs=1e-14)
    assert total_area(O, octant) == pytest.approx(4 * math.pi, abs=1e-13)
    assert gauss_bonnet_residual(O, S, octant) < 1e-10


@pytest.mark.parametrize("kind", ["A", "b1", "b2", "c1", "c2", "c1c3", "c2c4"])
@pytest.mark.parametrize("name", sorted(SPHERES))
def test_gauss_bonnet_on_random_metrics(kind, name, rng):
    M = SPHERES[name]()
    for _ in range(3):
        data, metric = random_structure(M, kind, rng)
        assert gauss_bonnet_residual(M, data.geometry, metric) < 1e-9


def test_gauss_bonnet_on_torus(rng):
    M = torus7()
    data, metric = random_structure(M, "A", rng)
    assert gauss_bonnet_residual(M, E, metric) < 1e-9
    assert math.fsum(vertex_curvatures(M, metric)) == pytest.approx(0.0, abs=1e-9)


# --- solver --------------------------------------------------------------------------------

def test_solver_symmetric_tetrahedron():
    T = tetrahedron()
    data = _uniform(T, E, "A", 1.0, alpha=np.zeros(4))
    data.f = np.array([0.2, -0.1, 0.05, 0.3])
    res = solve_prescribed_curvature(T, data, np.full(4, math.pi))
    assert res.residual < 1e-10 and res.iterations <= 20
    l = realize(T, data.with_f(res.f)).l
    assert max(l.values()) - min(l.values()) < 1e-9


def test_solver_infeasible_target():
    T = tetrahedron()
    with pytest.raises(InfeasibleTarget):
        solve_prescribed_curvature(T, _uniform(T, E, "A", 1.0), np.full(4, 3.0))


def test_solver_start_at_solution():
    T = tetrahedron()
    data = _uniform(T, E, "A", 1.0)
    res = solve_prescribed_curvature(T, data, np.full(4, math.pi))
    assert res.iterations <= 1
    assert res.f == pytest.approx(data.f, abs=1e-10)


def test_solver_invalid_start():
    T = tetrahedron()
    data = _uniform(T, E, "A", 0.5)
    data.eta[(0, 1)] = 4.0
    with pytest.raises(StepDegenerate):
        solve_prescribed_curvature(T, data, np.full(4, math.pi))


def test_solver_config_checked():
    with pytest.raises(ValueError):
        SolverConfig(min_damping=2.0)


@pytest.mark.parametrize("kind", ["A", "b1", "b2"])
def test_solver_recovers_planted_curvature(kind, rng):
    M = octahedron()
    data, metric = random_structure(M, kind, rng)
    target = vertex_curvatures(M, metric)
    start = data.with_f(data.f + rng.uniform(-0.05, 0.05, M.n_vertices))
    res = solve_prescribed_curvature(M, start, target)
    assert res.residual < 1e-10
    assert vertex_curvatures(M, realize(M, data.with_f(res.f))) == pytest.approx(target, abs=1e-10)


def test_euclidean_shift_invariance(rng):
    M = octahedron()
    data, metric = random_structure(M, "A", rng)
    target = vertex_curvatures(M, metric)
    start = data.f + rng.uniform(-0.05, 0.05, M.n_vertices)
    a = solve_prescribed_curvature(M, data.with_f(start), target)
    b = solve_prescribed_curvature(M, data.with_f(start + 0.7), target)
    assert np.max(np.abs(a.f - b.f)) < 1e-10


# --- io ------------------------------------------------------------------------------------

def test_structure_roundtrip(tmp_path, rng):
    M = octahedron()
    for kind in ("A", "b2", "c1c3"):
        data, _ = random_structure(M, kind, rng)
        p = tmp_path / f"{kind}.json"
        io.write_json(p, io.structure_to_json(data))
        back = io.load_structure(p, M)
        assert io.structure_to_json(back) == io.structure_to_json(data)


def test_C_completed_by_antisymmetry():
    T = tetrahedron()
    obj = {"geometry": "hyperbolic", "family": "b2", "f": [0] * 4, "eta": {"0-1": 2.0}, "C": {"0,1": 0.25}}
    data = io.structure_from_json(obj, T)
    assert data.C[(1, 0)] == -0.25 and data.C[(2, 3)] == 0.0


@pytest.mark.parametrize(
    "text",
    ["not json", "[1, 2]", '{"faces": 3}', '{"faces": [[0, 1]]}'],
)
def test_mesh_schema_errors(tmp_path, text):
    p = tmp_path / "m.json"
    p.write_text(text)
    with pytest.raises(io.SchemaError):
        io.load_mesh(p)


def test_structure_schema_errors():
    with pytest.raises(io.SchemaError):
        io.structure_from_json({"geometry": "hyperbolic"})
    with pytest.raises(io.SchemaError):
        io.structure_from_json({"geometry": "hyperbolic", "family": "b2", "f": [0], "eta": {"0_1": 1.0}})
    with pytest.raises(io.SchemaError):
        io.structure_from_json({"geometry": "hyperbolic", "family": "b2", "f": [0], "eta": {"0-1": 1.0, "1-0": 2.0}})


def test_target_schema(tmp_path):
    p = tmp_path / "t.json"
    p.write_text(json.dumps({"K": [1.0, 2.0]}))
    with pytest.raises(io.SchemaError):
        io.load_target(p, 4)


def test_dumps_is_stable():
    obj = {"b": [1, 0.1, float("nan")], "a": {"x": True, "y": None}, "c": 1 / 3}
    text = io.dumps(obj)
    assert text == io.dumps(json.loads(text.replace("null", "NaN")))
    assert json.loads(text)["c"] == 1 / 3
    assert text.index('"b"') < text.index('"a"')
