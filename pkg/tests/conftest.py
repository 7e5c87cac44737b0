import logging
import math

import matplotlib

matplotlib.use("Agg")

import numpy as np
import pytest
from scipy.spatial import ConvexHull

from scripts.poisson_voronoi.geometry import (
    EmbeddedGraph,
    PointSet,
    Triangulation,
    Window,
    delaunay,
    sample_poisson,
)


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run the full-scale Monte-Carlo checks")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(autouse=True)
def serial_workers(monkeypatch):
    monkeypatch.setenv("VORONOI_THREADS", "1")


@pytest.fixture(autouse=True)
def package_logger():
    # The CLI installs its own handler and stops propagation; caplog needs it back.
    logger = logging.getLogger("scripts.poisson_voronoi")
    logger.handlers.clear()
    logger.propagate = True
    logger.setLevel(logging.NOTSET)
    yield logger


def sphere_map(points) -> EmbeddedGraph:
    """Rotation system of a convex polyhedron, faces oriented outwards."""

    pts = np.asarray(points, dtype=float)
    hull = ConvexHull(pts)
    centroid = pts.mean(axis=0)
    faces = []
    for a, b, c in hull.simplices:
        a, b, c = int(a), int(b), int(c)
        normal = np.cross(pts[b] - pts[a], pts[c] - pts[a])
        if np.dot(normal, pts[a] - centroid) < 0:
            b, c = c, b
        faces.append((a, b, c))
    return EmbeddedGraph.from_triangles(faces)


@pytest.fixture(scope="session")
def tetrahedron():
    return sphere_map([(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)])


@pytest.fixture(scope="session")
def octahedron():
    return sphere_map([(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)])


@pytest.fixture(scope="session")
def icosahedron():
    phi = (1 + math.sqrt(5)) / 2
    pts = []
    for s in (1, -1):
        for t in (1, -1):
            pts += [(0, s, t * phi), (s, t * phi, 0), (t * phi, 0, s)]
    return sphere_map(pts)


@pytest.fixture
def k3_map():
    return EmbeddedGraph.from_triangles([(0, 1, 2)], {0: (0.0, 0.0), 1: (1.0, 0.0), 2: (0.0, 1.0)})


@pytest.fixture
def c4_map():
    return EmbeddedGraph.from_positions(
        {0: (0.0, 0.0), 1: (1.0, 0.0), 2: (1.0, 1.0), 3: (0.0, 1.0)},
        [(0, 1), (1, 2), (2, 3), (3, 0)],
    )


@pytest.fixture
def k3_tri():
    return Triangulation.from_triangles([(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)], [(0, 1, 2)], Window.square(2.0))


@pytest.fixture
def hexagon_tri():
    """Regular hexagon (vertices 1..6, counter-clockwise) around a centre vertex 0."""

    verts = [(0.0, 0.0)] + [(math.cos(k * math.pi / 3), math.sin(k * math.pi / 3)) for k in range(6)]
    tris = [(0, k, k % 6 + 1) for k in range(1, 7)]
    return Triangulation.from_triangles(verts, tris, Window.square(2.0))


@pytest.fixture
def wheel4():
    """4-cycle 0-1-2-3 with hub 4 adjacent to all of it."""

    return {0: (1, 3, 4), 1: (0, 2, 4), 2: (1, 3, 4), 3: (0, 2, 4), 4: (0, 1, 2, 3)}


@pytest.fixture
def lattice_patch():
    """Adjacency of a 5x5 patch of the triangular lattice, vertex (i, j) -> 5 i + j."""

    size = 5
    adj = {}
    for i in range(size):
        for j in range(size):
            nbrs = []
            for di, dj in ((1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)):
                a, b = i + di, j + dj
                if 0 <= a < size and 0 <= b < size:
                    nbrs.append(a * size + b)
            adj[i * size + j] = tuple(nbrs)
    return adj


def grid_points(lo: int, hi: int, offset: float = 0.0) -> np.ndarray:
    return np.array([(x + offset, y + offset) for x in range(lo, hi) for y in range(lo, hi)], dtype=float)


@pytest.fixture(scope="session")
def small_sample():
    return sample_poisson(Window.square(10.0), pad_width=3.0, seed=11)


@pytest.fixture(scope="session")
def small_tri(small_sample):
    return delaunay(small_sample)


@pytest.fixture(scope="session")
def grid_tri():
    """Half-integer grid filling Q((4, 4), 4); every cell is a unit square."""

    pts = PointSet.from_points(grid_points(0, 8, 0.5), Window((4.0, 4.0), 4.0))
    return delaunay(pts)
