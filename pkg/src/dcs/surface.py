"""Combinatorics of closed triangulated surfaces.

A :class:`TriangulatedSurface` only stores connectivity: vertices are the
integers ``0 .. n-1``, faces are ordered vertex triples, and every derived
structure (edges, oriented edges, adjacency, edge-to-face incidence) is
computed once at construction and never mutated afterwards.

Edges are keyed by ``(min, max)`` and iterated in sorted order so that
everything downstream (residual reports, gauge integration) is reproducible.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import DegenerateFace, Disconnected, InvalidSurface, NonManifold

Edge = tuple[int, int]
Face = tuple[int, int, int]


def edge_key(i: int, j: int) -> Edge:
    """Unordered edge key ``(min, max)``."""
    return (i, j) if i < j else (j, i)


def face_edges(face: Sequence[int]) -> tuple[Edge, Edge, Edge]:
    """Oriented edges ``(i,j), (j,k), (k,i)`` of a face in its stored order."""
    i, j, k = face
    return (i, j), (j, k), (k, i)


@dataclass(frozen=True)
class TriangulatedSurface:
    vertex_count: int
    faces: tuple[Face, ...]
    edges: tuple[Edge, ...] = field(repr=False)
    oriented_edges: tuple[Edge, ...] = field(repr=False)
    adjacency: tuple[tuple[int, ...], ...] = field(repr=False)
    edge_faces: dict = field(repr=False, compare=False)
    edge_index: dict = field(repr=False, compare=False)

    @property
    def n_vertices(self) -> int:
        return self.vertex_count

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def faces_at(self, v: int) -> list[int]:
        return [n for n, face in enumerate(self.faces) if v in face]

    def opposite_vertex(self, face_id: int, edge: Edge) -> int:
        (k,) = set(self.faces[face_id]) - set(edge)
        return k

    def to_json(self) -> dict:
        return {"vertex_count": self.vertex_count, "faces": [list(f) for f in self.faces]}


def build_surface(faces: Iterable[Sequence[int]], vertex_count: int | None = None) -> TriangulatedSurface:
    """Validate a face list and build the derived connectivity.

    Parameters
    ----------
    faces : iterable of vertex triples
        0-based vertex indices; orientation is kept as given.
    vertex_count : int, optional
        Defaults to ``max index + 1``. Every index in ``range(vertex_count)``
        must be used by some face.

    Raises
    ------
    DegenerateFace
        A face repeats a vertex, or two faces share the same vertex set.
    NonManifold
        Some edge is not incident to exactly two faces.
    Disconnected
        The 1-skeleton is not connected.
    """
    face_list: list[Face] = []
    for raw in faces:
        face = tuple(int(v) for v in raw)
        if len(face) != 3:
            raise InvalidSurface(f"face {raw!r} is not a triple")
        if any(v < 0 for v in face):
            raise InvalidSurface(f"face {face} has a negative vertex id")
        if len(set(face)) != 3:
            raise DegenerateFace(f"face {face} repeats a vertex")
        face_list.append(face)  # type: ignore[arg-type]
    if not face_list:
        raise InvalidSurface("empty face list")

    used = sorted({v for face in face_list for v in face})
    n = used[-1] + 1 if vertex_count is None else int(vertex_count)
    if used != list(range(n)):
        raise InvalidSurface(f"vertex ids must be contiguous 0..{n - 1}")

    seen_sets: dict[frozenset, int] = {}
    for idx, face in enumerate(face_list):
        key = frozenset(face)
        if key in seen_sets:
            raise DegenerateFace(f"faces {seen_sets[key]} and {idx} share vertex set {sorted(key)}")
        seen_sets[key] = idx

    incidence: dict[Edge, list[int]] = {}
    for idx, face in enumerate(face_list):
        for i, j in face_edges(face):
            incidence.setdefault(edge_key(i, j), []).append(idx)
    bad = sorted(e for e, fs in incidence.items() if len(fs) != 2)
    if bad:
        raise NonManifold(f"edges not incident to exactly two faces: {bad}")

    edges = tuple(sorted(incidence))
    oriented = tuple(sorted([(i, j) for i, j in edges] + [(j, i) for i, j in edges]))
    adj: list[set[int]] = [set() for _ in range(n)]
    for i, j in edges:
        adj[i].add(j)
        adj[j].add(i)
    adjacency = tuple(tuple(sorted(a)) for a in adj)

    reached = _bfs_order(adjacency, 0)[0]
    if len(reached) != n:
        raise Disconnected(f"1-skeleton has unreachable vertices {sorted(set(range(n)) - set(reached))}")

    return TriangulatedSurface(
        vertex_count=n,
        faces=tuple(face_list),
        edges=edges,
        oriented_edges=oriented,
        adjacency=adjacency,
        edge_faces={e: tuple(fs) for e, fs in incidence.items()},
        edge_index={e: k for k, e in enumerate(edges)},
    )


def _bfs_order(adjacency, root):
    order = [root]
    parent = {root: None}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for w in adjacency[v]:
            if w not in parent:
                parent[w] = v
                order.append(w)
                queue.append(w)
    return order, parent


def euler_characteristic(surface: TriangulatedSurface) -> int:
    return surface.n_vertices - surface.n_edges + surface.n_faces


def is_sphere(surface: TriangulatedSurface) -> bool:
    """A closed connected surface is simply connected iff chi = 2."""
    return euler_characteristic(surface) == 2


@dataclass(frozen=True)
class SpanningTree:
    root: int
    order: tuple[int, ...]
    parent: dict

    @property
    def edges(self) -> set[Edge]:
        """Tree edges as ``(parent, child)`` pairs."""
        return {(p, c) for c, p in self.parent.items() if p is not None}

    def path_to_root(self, v: int) -> list[int]:
        path = [v]
        while self.parent[path[-1]] is not None:
            path.append(self.parent[path[-1]])
        return path


def spanning_tree(surface: TriangulatedSurface, root: int = 0) -> SpanningTree:
    """Breadth-first spanning tree; neighbours are visited in ascending order."""
    if not 0 <= root < surface.n_vertices:
        raise ValueError(f"root {root} out of range")
    order, parent = _bfs_order(surface.adjacency, root)
    return SpanningTree(root=root, order=tuple(order), parent=parent)


# ---------------------------------------------------------------------------
# standard closed triangulations used throughout the tests and demos

def tetrahedron() -> TriangulatedSurface:
    return build_surface([(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])


def octahedron() -> TriangulatedSurface:
    # 0 north, 5 south, equator 1-2-3-4
    return build_surface([
        (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 1),
        (5, 2, 1), (5, 3, 2), (5, 4, 3), (5, 1, 4),
    ])


def bipyramid(n: int) -> TriangulatedSurface:
    """Suspension of an ``n``-gon: ring ``0..n-1``, apexes ``n`` and ``n+1``."""
    if n < 3:
        raise ValueError("need n >= 3")
    top, bottom = n, n + 1
    faces = []
    for i in range(n):
        j = (i + 1) % n
        faces.append((top, i, j))
        faces.append((bottom, j, i))
    return build_surface(faces)


def icosahedron() -> TriangulatedSurface:
    # 0 north, 1..5 upper ring, 6..10 lower ring, 11 south
    faces = []
    for k in range(5):
        u0, u1 = 1 + k, 1 + (k + 1) % 5
        l0, l1 = 6 + k, 6 + (k + 1) % 5
        faces += [(0, u0, u1), (u0, l0, u1), (u1, l0, l1), (11, l1, l0)]
    return build_surface(faces)


def torus7() -> TriangulatedSurface:
    """Moebius' minimal 7-vertex torus (14 faces, 21 edges)."""
    faces = []
    for i in range(7):
        faces.append((i, (i + 1) % 7, (i + 3) % 7))
        faces.append((i, (i + 3) % 7, (i + 2) % 7))
    return build_surface(faces)
