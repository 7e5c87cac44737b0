import numpy as np
import pytest

from scripts.poisson_voronoi.errors import ContractError, ParameterError
from scripts.poisson_voronoi.geometry import EmbeddedGraph
from scripts.poisson_voronoi.planar import (
    check_euler_six,
    check_ld_bound,
    map_stats,
    min_core_size_bound,
    random_connected_subset,
)


def test_triangle_stats(k3_map):
    stats = map_stats(k3_map)
    assert (stats.ld, stats.me) == (3, 0)
    assert stats.is_maximal_planar
    assert stats.face_degrees == {3: 2}


def test_tetrahedron_stats(tetrahedron):
    stats = map_stats(tetrahedron)
    assert (stats.ld, stats.me) == (4, 0)
    assert (stats.n_vertices, stats.n_edges, stats.n_faces) == (4, 6, 4)


def test_square_stats(c4_map):
    stats = map_stats(c4_map)
    assert (stats.ld, stats.me) == (4, 2)
    assert not stats.is_maximal_planar
    assert check_ld_bound(stats)


def test_path_has_one_face():
    path = EmbeddedGraph.from_positions({0: (0, 0), 1: (1, 0), 2: (2, 0)}, [(0, 1), (1, 2)])
    stats = map_stats(path)
    assert stats.face_degrees == {4: 1}
    assert stats.me == 1
    assert check_ld_bound(stats)


def test_star_meets_the_bound():
    leaves = {k: (np.cos(k), np.sin(k)) for k in range(1, 11)}
    star = EmbeddedGraph.from_positions({0: (0.0, 0.0), **leaves}, [(0, k) for k in leaves])
    stats = map_stats(star)
    assert stats.ld == 10
    assert stats.me == 17
    assert check_ld_bound(stats)


@pytest.mark.parametrize("name", ["tetrahedron", "octahedron", "icosahedron"])
def test_euler_six_on_polyhedra(name, request):
    graph = request.getfixturevalue(name)
    assert map_stats(graph).is_maximal_planar
    assert check_euler_six(graph)


def test_euler_six_needs_a_triangulation(c4_map):
    with pytest.raises(ContractError):
        check_euler_six(c4_map)


def test_icosahedron_low_degree_count(icosahedron):
    stats = map_stats(icosahedron)
    assert stats.ld == 12
    assert stats.me == 0
    assert check_ld_bound(stats)


@pytest.mark.parametrize(
    "rotation",
    [
        {0: (1,), 1: (), 2: ()},
        {0: (1,), 1: (0,), 2: (3,), 3: (2,)},
        {0: (1,), 1: (0,)},
    ],
)
def test_bad_maps_raise(rotation):
    with pytest.raises(ContractError):
        map_stats(EmbeddedGraph(rotation))


def test_min_core_size_bound():
    assert min_core_size_bound(10, 1) == 160
    assert min_core_size_bound(5, 2) == pytest.approx(10.0)
    with pytest.raises(ParameterError):
        min_core_size_bound(2, 2)
    with pytest.raises(ParameterError):
        min_core_size_bound(2, 0)


def test_random_connected_subset_is_connected(small_tri):
    from scripts.poisson_voronoi.peeling import components

    rng = np.random.default_rng(4)
    for size in (1, 3, 25, 60):
        subset = random_connected_subset(small_tri, size, rng)
        assert len(subset) == size
        assert len(components(small_tri.neighbor_lists, subset)) == 1
    with pytest.raises(ParameterError):
        random_connected_subset(small_tri, 0, rng)


def test_ld_bound_on_random_subsets(small_tri):
    rng = np.random.default_rng(9)
    for _ in range(25):
        size = int(rng.integers(3, 80))
        stats = map_stats(small_tri.induced(random_connected_subset(small_tri, size, rng)))
        assert check_ld_bound(stats)


def test_whole_triangulation_counts(small_tri):
    stats = map_stats(small_tri.embedded())
    assert stats.me == small_tri.hull_size() - 3
    assert check_ld_bound(stats)
