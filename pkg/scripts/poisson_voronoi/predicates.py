"""
Adaptive exact orientation and incircle predicates.

Both predicates first evaluate the determinant in floating point and accept
the sign when it exceeds a forward error bound (the "stage A" bounds of
Shewchuk's robust predicates). Only when the filter fails is the determinant
re-evaluated exactly with rational arithmetic; every IEEE double converts to
a ``Fraction`` without rounding, so the fallback sign is always correct.

All topological decisions in :mod:`geometry` and :mod:`percolation` go
through :func:`orient_sign` and :func:`incircle_sign`.

Usage example:

    from scripts.poisson_voronoi.predicates import orient_sign, incircle_sign

    orient_sign((0.0, 0.0), (1.0, 0.0), (0.0, 1.0))            # 1 (CCW)
    incircle_sign((0, 0), (1, 0), (0, 1), (0.2, 0.2))          # 1 (inside)

"""

from __future__ import annotations

import sys
from fractions import Fraction
from typing import Sequence, Tuple

Coord = Tuple[float, float]

# Half an ulp of 1.0, the unit roundoff of round-to-nearest doubles.
EPSILON = sys.float_info.epsilon * 0.5
CCW_ERRBOUND_A = (3.0 + 16.0 * EPSILON) * EPSILON
ICC_ERRBOUND_A = (10.0 + 96.0 * EPSILON) * EPSILON


def _sign(value) -> int:
    return (value > 0) - (value < 0)


def orient_exact(a: Coord, b: Coord, c: Coord) -> int:
    ax, ay = Fraction(a[0]), Fraction(a[1])
    bx, by = Fraction(b[0]), Fraction(b[1])
    cx, cy = Fraction(c[0]), Fraction(c[1])
    return _sign((ax - cx) * (by - cy) - (ay - cy) * (bx - cx))


def orient_sign(a: Coord, b: Coord, c: Coord) -> int:
    """Sign of the orientation of ``(a, b, c)``.

    Returns ``1`` when the triple turns counter-clockwise, ``-1`` when it
    turns clockwise and ``0`` when the points are exactly collinear.
    """

    detleft = (a[0] - c[0]) * (b[1] - c[1])
    detright = (a[1] - c[1]) * (b[0] - c[0])
    det = detleft - detright

    if detleft > 0.0:
        if detright <= 0.0:
            return _sign(det)
        detsum = detleft + detright
    elif detleft < 0.0:
        if detright >= 0.0:
            return _sign(det)
        detsum = -detleft - detright
    else:
        return _sign(det)

    errbound = CCW_ERRBOUND_A * detsum
    if det >= errbound or -det >= errbound:
        return _sign(det)
    return orient_exact(a, b, c)


def incircle_exact(a: Coord, b: Coord, c: Coord, d: Coord) -> int:
    dx, dy = Fraction(d[0]), Fraction(d[1])
    adx, ady = Fraction(a[0]) - dx, Fraction(a[1]) - dy
    bdx, bdy = Fraction(b[0]) - dx, Fraction(b[1]) - dy
    cdx, cdy = Fraction(c[0]) - dx, Fraction(c[1]) - dy
    alift = adx * adx + ady * ady
    blift = bdx * bdx + bdy * bdy
    clift = cdx * cdx + cdy * cdy
    det = (
        alift * (bdx * cdy - cdx * bdy)
        + blift * (cdx * ady - adx * cdy)
        + clift * (adx * bdy - bdx * ady)
    )
    return _sign(det)


def incircle_sign(a: Coord, b: Coord, c: Coord, d: Coord) -> int:
    """Sign of the incircle determinant.

    For a counter-clockwise triangle ``(a, b, c)`` the result is ``1`` when
    ``d`` lies strictly inside the circumcircle, ``-1`` when strictly
    outside and ``0`` when the four points are co-circular.
    """

    adx = a[0] - d[0]
    bdx = b[0] - d[0]
    cdx = c[0] - d[0]
    ady = a[1] - d[1]
    bdy = b[1] - d[1]
    cdy = c[1] - d[1]

    bdxcdy = bdx * cdy
    cdxbdy = cdx * bdy
    alift = adx * adx + ady * ady

    cdxady = cdx * ady
    adxcdy = adx * cdy
    blift = bdx * bdx + bdy * bdy

    adxbdy = adx * bdy
    bdxady = bdx * ady
    clift = cdx * cdx + cdy * cdy

    det = (
        alift * (bdxcdy - cdxbdy)
        + blift * (cdxady - adxcdy)
        + clift * (adxbdy - bdxady)
    )
    permanent = (
        (abs(bdxcdy) + abs(cdxbdy)) * alift
        + (abs(cdxady) + abs(adxcdy)) * blift
        + (abs(adxbdy) + abs(bdxady)) * clift
    )
    errbound = ICC_ERRBOUND_A * permanent
    if det > errbound or -det > errbound:
        return _sign(det)
    return incircle_exact(a, b, c, d)


def incircle_perturbed(points: Sequence[Coord], ia: int, ib: int, ic: int, id_: int) -> int:
    """Incircle sign under symbolic perturbation of the lifted heights.

    Each point ``i`` is lifted to ``x² + y² + δ_i`` where the perturbations
    are infinitesimal and strictly ordered by point index, the highest index
    carrying the dominant one. Exact co-circularity is therefore resolved by
    the sign of the first non-vanishing cofactor in that order, and the
    result is never ``0`` when ``(ia, ib, ic)`` is a proper triangle.
    """

    pa, pb, pc, pd = points[ia], points[ib], points[ic], points[id_]
    s = incircle_sign(pa, pb, pc, pd)
    if s:
        return s

    # Cofactors of the lifted column in the 4x4 (x, y, x²+y², 1) determinant.
    cofactors = (
        (ia, 1, (pb, pc, pd)),
        (ib, -1, (pa, pc, pd)),
        (ic, 1, (pa, pb, pd)),
        (id_, -1, (pa, pb, pc)),
    )
    for _, sign, (p, q, r) in sorted(cofactors, key=lambda item: -item[0]):
        o = orient_sign(p, q, r)
        if o:
            return sign * o
    return 0


__all__ = [
    "orient_sign",
    "orient_exact",
    "incircle_sign",
    "incircle_exact",
    "incircle_perturbed",
    "EPSILON",
]
