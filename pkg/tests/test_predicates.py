from hypothesis import given, settings, strategies as st

from scripts.poisson_voronoi.predicates import (
    incircle_exact,
    incircle_perturbed,
    incircle_sign,
    orient_exact,
    orient_sign,
)

# Keep magnitudes away from the underflow range, where no float filter is exact.
coords = st.floats(min_value=-100.0, max_value=100.0, allow_nan=False).filter(lambda v: v == 0 or abs(v) > 1e-6)
points = st.tuples(coords, coords)


def test_orient_basic():
    assert orient_sign((0.0, 0.0), (1.0, 0.0), (0.0, 1.0)) == 1
    assert orient_sign((0.0, 0.0), (0.0, 1.0), (1.0, 0.0)) == -1
    assert orient_sign((0.0, 0.0), (1.0, 1.0), (2.0, 2.0)) == 0


def test_orient_near_collinear_grid():
    # Points a few ulps away from the line y = x, where naive evaluation fails.
    u = 2.0 ** -53
    b, c = (12.0, 12.0), (24.0, 24.0)
    for i in range(16):
        for j in range(16):
            a = (0.5 + i * u, 0.5 + j * u)
            assert orient_sign(a, b, c) == orient_exact(a, b, c)


@settings(deadline=None, max_examples=300)
@given(points, points, points)
def test_orient_matches_exact(a, b, c):
    assert orient_sign(a, b, c) == orient_exact(a, b, c)


@settings(deadline=None, max_examples=300)
@given(points, points, points, points)
def test_incircle_matches_exact(a, b, c, d):
    assert incircle_sign(a, b, c, d) == incircle_exact(a, b, c, d)


def test_incircle_basic():
    a, b, c = (0.0, 0.0), (1.0, 0.0), (0.0, 1.0)
    assert incircle_sign(a, b, c, (0.2, 0.2)) == 1
    assert incircle_sign(a, b, c, (2.0, 2.0)) == -1
    assert incircle_sign(a, b, c, (1.0, 1.0)) == 0


def test_incircle_perturbed_breaks_cocircular_ties():
    square = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]
    # Both diagonals of the square see the opposite corner exactly on the circle.
    assert incircle_sign(square[0], square[1], square[2], square[3]) == 0
    s = incircle_perturbed(square, 0, 1, 2, 3)
    assert s != 0
    assert incircle_perturbed(square, 0, 1, 2, 3) == s
    assert incircle_perturbed(square, 1, 2, 3, 0) != 0


def test_incircle_perturbed_agrees_off_the_circle():
    pts = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (0.2, 0.2), (5.0, 5.0)]
    assert incircle_perturbed(pts, 0, 1, 2, 3) == 1
    assert incircle_perturbed(pts, 0, 1, 2, 4) == -1


def test_exact_on_large_magnitudes():
    a, b, c = (1e15, 1e15), (1e15 + 1, 1e15 + 2), (1e15 + 2, 1e15 + 4)
    assert orient_sign(a, b, c) == orient_exact(a, b, c) == 0
