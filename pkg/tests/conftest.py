import numpy as np
import pytest

from dcs.surface import bipyramid, icosahedron, octahedron, tetrahedron, torus7


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)


SPHERES = {
    "tetrahedron": tetrahedron,
    "octahedron": octahedron,
    "bipyramid5": lambda: bipyramid(5),
    "icosahedron": icosahedron,
}
ALL_MESHES = dict(SPHERES, torus7=torus7)


# one summary line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
