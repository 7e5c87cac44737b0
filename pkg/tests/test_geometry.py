import dataclasses

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from scripts.poisson_voronoi.errors import ContractError, DegenerateInputError, ParameterError
from scripts.poisson_voronoi.geometry import (
    PointSet,
    Triangulation,
    Window,
    delaunay,
    iter_clique_triangles,
    make_rng,
    outer_boundary,
    sample_poisson,
    shoelace_area,
    voronoi_cells,
)
from scripts.poisson_voronoi.planar import map_stats
from scripts.poisson_voronoi.predicates import incircle_sign, orient_sign


def assert_empty_circumdisks(tri: Triangulation) -> None:
    """Brute-force scan: no vertex strictly inside any circumcircle."""

    pts = tri.points
    for a, b, c in tri.triangles:
        assert orient_sign(pts[a], pts[b], pts[c]) > 0
        for d in range(tri.n):
            if d not in (a, b, c):
                assert incircle_sign(pts[a], pts[b], pts[c], pts[d]) <= 0, (a, b, c, d)


# windows and sampling


def test_window_validation():
    with pytest.raises(ParameterError):
        Window.square(0.0)
    with pytest.raises(ParameterError):
        Window.square(float("nan"))
    with pytest.raises(ParameterError):
        Window.annulus(3.0, 2.0)
    with pytest.raises(ParameterError):
        Window.square(1.0).padded(-1.0)


def test_window_annulus_membership():
    ring = Window.annulus(1.0, 2.0)
    assert ring.area == 16.0 - 4.0
    assert not ring.contains((0.5, 0.0))
    assert ring.contains((1.0, 0.0))
    assert ring.contains((1.5, -1.9))
    assert not ring.contains((2.1, 0.0))
    mask = ring.contains_array(np.array([(0.5, 0.0), (1.5, 1.5), (3.0, 0.0)]))
    assert mask.tolist() == [False, True, False]


def test_window_dict_round_trip():
    w = Window.annulus(1.5, 4.0, center=(2.0, -1.0))
    assert Window.from_dict(w.to_dict()) == w


def test_sample_is_deterministic():
    w = Window.square(5.0)
    a = sample_poisson(w, pad_width=1.0, seed=3)
    b = sample_poisson(w, pad_width=1.0, seed=3)
    c = sample_poisson(w, pad_width=1.0, seed=4)
    assert np.array_equal(a.coords, b.coords)
    assert not np.array_equal(a.coords, c.coords)


def test_sample_stays_in_padded_window():
    pts = sample_poisson(Window.square(10.0, (3.0, -2.0)), pad_width=2.0, seed=1)
    assert pts.padded_window.half_side == 12.0
    assert pts.padded_window.contains_array(pts.coords).all()
    # Poisson(576): five standard deviations either side.
    assert 456 < len(pts) < 696


def test_sample_rejects_bad_parameters():
    with pytest.raises(ParameterError):
        sample_poisson(Window.square(5.0), intensity=0.0)
    with pytest.raises(ParameterError):
        sample_poisson(Window.annulus(1.0, 5.0))
    with pytest.raises(ParameterError):
        sample_poisson(Window.square(5.0), seed=-1)


def test_rng_streams_are_disjoint():
    a = make_rng(5).random(8)
    b = make_rng(5, stream=1).random(8)
    assert not np.array_equal(a, b)
    assert np.array_equal(b, make_rng(5, stream=1).random(8))


def test_point_set_validation():
    with pytest.raises(DegenerateInputError):
        PointSet.from_points([(0.0, 0.0), (1.0, 1.0), (0.0, 0.0)])
    with pytest.raises(ParameterError):
        PointSet.from_points([(0.0, 0.0), (9.0, 9.0)], Window.square(1.0))
    with pytest.raises(ParameterError):
        PointSet.from_points([(0.0, float("inf"))])
    inferred = PointSet.from_points([(0.0, 0.0), (4.0, 2.0)])
    assert inferred.sample_window.center == (2.0, 1.0)
    assert inferred.sample_window.half_side == 2.0


# triangulation


def test_three_points_make_one_triangle():
    tri = delaunay(PointSet.from_points([(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]))
    assert len(tri.triangles) == 1
    assert [tri.degree(v) for v in range(3)] == [2, 2, 2]
    assert tri.hull_size() == 3


@pytest.mark.parametrize(
    "coords",
    [
        [(0.0, 0.0), (1.0, 1.0)],
        [(0.0, 0.0), (1.0, 1.0), (2.0, 2.0), (3.0, 3.0)],
    ],
)
def test_degenerate_inputs_rejected(coords):
    with pytest.raises(DegenerateInputError):
        delaunay(PointSet.from_points(coords))


def test_unit_square_corners():
    pts = PointSet.from_points([(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])
    tri = delaunay(pts)
    assert len(tri.triangles) == 2
    assert_empty_circumdisks(tri)
    assert delaunay(pts).triangles == tri.triangles


def test_random_points_have_empty_circumdisks():
    coords = np.random.default_rng(50).uniform(0.0, 10.0, size=(50, 2))
    tri = delaunay(PointSet.from_points(coords))
    assert_empty_circumdisks(tri)
    assert len(tri.triangles) == 2 * tri.n - 2 - tri.hull_size()


def test_grid_triangulation_is_conforming(grid_tri):
    assert grid_tri.n == 64
    assert len(grid_tri.triangles) == 2 * 64 - 2 - 28
    assert_empty_circumdisks(grid_tri)


@st.composite
def planar_point_sets(draw):
    cells = draw(
        st.lists(
            st.tuples(st.integers(0, 400), st.integers(0, 400)),
            min_size=3,
            max_size=14,
            unique=True,
        )
    )
    return [(x / 40.0, y / 40.0) for x, y in cells]


@settings(deadline=None, max_examples=60)
@given(planar_point_sets())
def test_delaunay_property(coords):
    a, b = coords[0], coords[1]
    assume(any(orient_sign(a, b, c) for c in coords[2:]))
    tri = delaunay(PointSet.from_points(coords))
    assert_empty_circumdisks(tri)
    stats = map_stats(tri.embedded())
    # Every inner face is a triangle; only the outer face is larger.
    assert stats.n_vertices - stats.n_edges + stats.n_faces == 2
    assert stats.me == tri.hull_size() - 3
    assert sum(k * c for k, c in stats.face_degrees.items()) == 2 * stats.n_edges


def test_triangulation_is_deterministic(small_sample, small_tri):
    again = delaunay(small_sample)
    assert again.triangles == small_tri.triangles
    assert again.neighbor_lists == small_tri.neighbor_lists
    assert voronoi_cells(again) == voronoi_cells(small_tri)


def test_triangulation_points_are_fixed_at_construction(small_tri):
    assert isinstance(small_tri.points, tuple)
    assert len(small_tri.points) == small_tri.n
    assert [tuple(p) for p in small_tri.points[:5]] == [tuple(xy) for xy in small_tri.vertices[:5].tolist()]
    with pytest.raises(dataclasses.FrozenInstanceError):
        small_tri.points = ()


def test_from_triangles_requires_cover():
    with pytest.raises(DegenerateInputError):
        Triangulation.from_triangles([(0, 0), (1, 0), (0, 1), (5, 5)], [(0, 1, 2)])


def test_induced_rotation_keeps_only_subset(hexagon_tri):
    g = hexagon_tri.induced([0, 1, 2, 3])
    assert set(g.rotation) == {0, 1, 2, 3}
    assert set(g.rotation[0]) == {1, 2, 3}
    assert set(g.rotation[2]) == {0, 1, 3}


# Voronoi cells


def test_mirror_symmetric_cells():
    pts = PointSet.from_points([(-1.0, 0.0), (1.0, 0.0), (0.0, 2.0)], Window.square(5.0))
    cells = voronoi_cells(delaunay(pts))
    assert len(cells) == 3
    assert cells[0].area == pytest.approx(cells[1].area, abs=1e-9)
    assert sum(c.area for c in cells) == pytest.approx(100.0, abs=1e-9)


def test_cocircular_quadrants():
    pts = PointSet.from_points([(-2.5, -2.5), (2.5, -2.5), (2.5, 2.5), (-2.5, 2.5)], Window.square(5.0))
    cells = voronoi_cells(delaunay(pts))
    for cell in cells:
        assert cell.area == pytest.approx(25.0, abs=1e-9)
        assert cell.contaminated


def test_grid_cells_are_unit_squares(grid_tri):
    cells = voronoi_cells(grid_tri)
    clean = [c for c in cells if not c.contaminated]
    assert len(clean) == 36
    for cell in cells:
        assert cell.area == pytest.approx(1.0, abs=1e-9)


def test_cells_partition_the_window(small_sample, small_tri):
    cells = voronoi_cells(small_tri, small_sample.padded_window)
    total = sum(c.area for c in cells)
    assert total == pytest.approx(small_sample.padded_window.area, rel=1e-6)
    assert all(c.area > 0 for c in cells)
    for cell in cells:
        assert shoelace_area(cell.polygon) == pytest.approx(cell.area)


def test_hull_cells_are_contaminated(small_tri):
    cells = voronoi_cells(small_tri)
    for v, cell in enumerate(cells):
        if small_tri.hull_flags[v]:
            assert cell.contaminated
    assert not all(c.contaminated for c in cells)


def test_cells_need_a_window():
    tri = Triangulation.from_triangles([(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)], [(0, 1, 2)])
    with pytest.raises(ContractError):
        voronoi_cells(tri)


# faces


def test_outer_boundary_of_a_triangle(hexagon_tri):
    assert sorted(outer_boundary(hexagon_tri, [0, 1, 2])) == [0, 1, 2]


def test_outer_boundary_of_a_path(hexagon_tri):
    assert sorted(outer_boundary(hexagon_tri, [1, 2, 3])) == [1, 2, 3]


def test_outer_boundary_skips_the_centre(hexagon_tri):
    walk = outer_boundary(hexagon_tri, range(7))
    assert sorted(walk) == [1, 2, 3, 4, 5, 6]
    assert len(walk) == 6


@pytest.mark.parametrize("subset", [[], [1, 4]])
def test_outer_boundary_needs_connected_subset(hexagon_tri, subset):
    with pytest.raises(ContractError):
        outer_boundary(hexagon_tri, subset)


def test_outer_boundary_matches_hull(small_tri):
    walk = outer_boundary(small_tri, range(small_tri.n))
    assert set(walk) == {v for v in range(small_tri.n) if small_tri.hull_flags[v]}


def test_clique_triangles_of_hexagon(hexagon_tri):
    assert sorted(iter_clique_triangles(hexagon_tri)) == sorted(
        tuple(sorted(t)) for t in hexagon_tri.triangles
    )
